import time
from typing import TYPE_CHECKING, Any, Dict, List, Optional

if TYPE_CHECKING:
    from .store import Store


class Step:
    """One stage of a traced run, with its output and per-case checks"""

    def __init__(self, step_id: str, run_id: str, name: str, index: int,
                 params: Dict[str, Any], note: Optional[str], store: "Store"):
        self.step_id = step_id
        self.run_id = run_id
        self.name = name
        self.index = index
        self.params = params
        self.note = note
        self._store = store
        self._started = time.perf_counter()
        self._output: Optional[Dict[str, Any]] = None
        self._checks: List[Dict[str, Any]] = []
        self._error: Optional[str] = None

    def set_output(self, output: Dict[str, Any]):
        """
        Set the output of this stage.

        Args:
            output: JSON-serializable summary (counts, polynomial text, ...)
        """
        self._output = output

    def add_check(self, check: Dict[str, Any]):
        """
        Record one check made during this stage.

        Args:
            check: Dictionary with at least "key" and "passed"
        """
        self._checks.append(check)

    def add_checks(self, checks: List[Dict[str, Any]]):
        self._checks.extend(checks)

    @property
    def checks(self) -> List[Dict[str, Any]]:
        return list(self._checks)

    def _set_error(self, error: str):
        self._error = error

    def _finish(self):
        self._store.finish_step(
            step_id=self.step_id,
            duration_ms=int((time.perf_counter() - self._started) * 1000),
            status="error" if self._error else "success",
            output=self._output,
            checks=self._checks or None,
            error=self._error,
        )
