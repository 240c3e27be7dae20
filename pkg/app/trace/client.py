import logging
import uuid
from contextlib import contextmanager
from typing import Any, Dict, Optional

from .run import Run
from .store import MemoryStore, SQLiteStore, Store

logger = logging.getLogger(__name__)


class Tracer:
    """Records computation runs (M, X, trees, verification) and their stages"""

    def __init__(self, store: Optional[Store] = None):
        """
        Initialize the tracer.

        Args:
            store: Optional store instance. If None, uses SQLite when KR_TRACE_DB_PATH
                   is set and an in-memory store otherwise.
        """
        if store is None:
            from app.settings import get_settings

            path = get_settings().trace_db_path
            store = SQLiteStore(path) if path else MemoryStore()
        self._store = store
        self._current_run: Optional[Run] = None

    @property
    def store(self) -> Store:
        return self._store

    @contextmanager
    def run(self, name: str, metadata: Optional[Dict[str, Any]] = None):
        """
        Open a traced run.

        Usage:
            with tracer.run("m", metadata={"type": "C2~1"}) as run:
                with run.step("virtual_kleber", params={...}) as step:
                    ...

        Args:
            name: Command or job name
            metadata: Type, tensor and weight of the job
        """
        run_id = str(uuid.uuid4())
        run = Run(run_id=run_id, name=name, metadata=metadata or {}, store=self._store)
        self._store.create_run(run_id=run_id, name=name, metadata=metadata or {})
        self._current_run = run
        try:
            yield run
        except Exception as e:
            logger.warning("run %s (%s) failed: %s", name, run_id, e)
            run._set_error(f"{type(e).__name__}: {e}")
            raise
        finally:
            run._finish()
            self._current_run = None

    def get_current_run(self) -> Optional[Run]:
        return self._current_run


_default_tracer: Optional[Tracer] = None


def get_tracer() -> Tracer:
    """Get the process-wide tracer, creating it on first use"""
    global _default_tracer
    if _default_tracer is None:
        _default_tracer = Tracer()
    return _default_tracer


def set_tracer(tracer: Optional[Tracer]):
    """Replace the process-wide tracer (None resets it)"""
    global _default_tracer
    _default_tracer = tracer
