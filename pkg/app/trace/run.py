import time
import uuid
from contextlib import contextmanager
from typing import TYPE_CHECKING, Any, Dict, Optional

from .step import Step

if TYPE_CHECKING:
    from .store import Store


class Run:
    """A single traced job"""

    def __init__(self, run_id: str, name: str, metadata: Dict[str, Any], store: "Store"):
        self.run_id = run_id
        self.name = name
        self.metadata = metadata
        self._store = store
        self._step_index = 0
        self._started = time.perf_counter()
        self._error: Optional[str] = None

    @contextmanager
    def step(self, name: str, params: Optional[Dict[str, Any]] = None,
             note: Optional[str] = None):
        """
        Open a stage of this run.

        Args:
            name: Stage name, e.g. "kleber_tree" or "x_equals_m"
            params: Inputs of the stage
            note: Free text shown next to the stage
        """
        step = Step(
            step_id=str(uuid.uuid4()),
            run_id=self.run_id,
            name=name,
            index=self._step_index,
            params=params or {},
            note=note,
            store=self._store,
        )
        self._step_index += 1
        self._store.create_step(step.step_id, self.run_id, name, step.index, step.params, note)
        try:
            yield step
        except Exception as e:
            step._set_error(f"{type(e).__name__}: {e}")
            raise
        finally:
            step._finish()

    @property
    def error(self) -> Optional[str]:
        return self._error

    def _set_error(self, error: str):
        self._error = error

    def _finish(self):
        duration_ms = int((time.perf_counter() - self._started) * 1000)
        self._store.finish_run(
            run_id=self.run_id,
            duration_ms=duration_ms,
            status="error" if self._error else "success",
            error=self._error,
        )
