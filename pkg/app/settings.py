"""Runtime settings read from the environment."""
import logging
import os
from typing import Optional

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """KR_TRACE_DB_PATH, KR_GRAPH_CAP, KR_WORKERS, KR_LOG_LEVEL, KR_HOST and KR_PORT."""

    trace_db_path: Optional[str] = None
    graph_cap: int = Field(default=1_000_000, ge=1)
    workers: int = Field(default=1, ge=1)
    log_level: str = "WARNING"
    host: str = "127.0.0.1"
    port: int = Field(default=8000, ge=1, le=65535)


def load_settings() -> Settings:
    raw = {
        "trace_db_path": os.getenv("KR_TRACE_DB_PATH") or None,
        "graph_cap": os.getenv("KR_GRAPH_CAP"),
        "workers": os.getenv("KR_WORKERS"),
        "log_level": os.getenv("KR_LOG_LEVEL"),
        "host": os.getenv("KR_HOST"),
        "port": os.getenv("KR_PORT"),
    }
    values = {k: v for k, v in raw.items() if v is not None}
    try:
        return Settings(**values)
    except ValidationError as e:
        logger.warning("ignoring invalid environment settings: %s", e)
        return Settings()


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def configure_logging(level: Optional[str] = None):
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
