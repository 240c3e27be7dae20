from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional


class Store(ABC):
    """Storage interface for traced runs and their steps"""

    @abstractmethod
    def create_run(self, run_id: str, name: str, metadata: Dict[str, Any]):
        pass

    @abstractmethod
    def finish_run(self, run_id: str, duration_ms: int, status: str,
                   error: Optional[str] = None):
        pass

    @abstractmethod
    def create_step(self, step_id: str, run_id: str, name: str, index: int,
                    params: Dict[str, Any], note: Optional[str]):
        pass

    @abstractmethod
    def finish_step(self, step_id: str, duration_ms: int, status: str,
                    output: Optional[Dict[str, Any]] = None,
                    checks: Optional[List[Dict[str, Any]]] = None,
                    error: Optional[str] = None):
        pass

    @abstractmethod
    def list_runs(self, limit: int = 100) -> List[Dict[str, Any]]:
        """Most recent runs first"""

    @abstractmethod
    def get_run(self, run_id: str) -> Optional[Dict[str, Any]]:
        """A run with its steps in order, or None"""


from .memory_store import MemoryStore  # noqa: E402
from .sqlite_store import SQLiteStore  # noqa: E402

__all__ = ["Store", "MemoryStore", "SQLiteStore"]
