from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from . import Store


class MemoryStore(Store):
    """Keeps runs in process memory; used when no trace database is configured"""

    def __init__(self):
        self._runs: Dict[str, Dict[str, Any]] = {}
        self._order: List[str] = []

    def create_run(self, run_id: str, name: str, metadata: Dict[str, Any]):
        self._runs[run_id] = {
            "id": run_id,
            "name": name,
            "started_at": datetime.now(timezone.utc).isoformat(),
            "duration_ms": None,
            "status": "running",
            "metadata": dict(metadata),
            "error": None,
            "steps": [],
        }
        self._order.append(run_id)

    def finish_run(self, run_id: str, duration_ms: int, status: str,
                   error: Optional[str] = None):
        self._runs[run_id].update(duration_ms=duration_ms, status=status, error=error)

    def create_step(self, step_id: str, run_id: str, name: str, index: int,
                    params: Dict[str, Any], note: Optional[str]):
        self._runs[run_id]["steps"].append({
            "id": step_id,
            "run_id": run_id,
            "name": name,
            "index": index,
            "status": "running",
            "params": dict(params),
            "note": note,
            "output": {},
            "checks": None,
            "error": None,
            "duration_ms": None,
        })

    def _step(self, step_id: str) -> Dict[str, Any]:
        for run in self._runs.values():
            for step in run["steps"]:
                if step["id"] == step_id:
                    return step
        raise KeyError(step_id)

    def finish_step(self, step_id: str, duration_ms: int, status: str,
                    output: Optional[Dict[str, Any]] = None,
                    checks: Optional[List[Dict[str, Any]]] = None,
                    error: Optional[str] = None):
        self._step(step_id).update(duration_ms=duration_ms, status=status,
                                   output=output or {}, checks=checks, error=error)

    def list_runs(self, limit: int = 100) -> List[Dict[str, Any]]:
        recent = list(reversed(self._order))[:limit]
        return [{k: v for k, v in self._runs[r].items() if k != "steps"} for r in recent]

    def get_run(self, run_id: str) -> Optional[Dict[str, Any]]:
        run = self._runs.get(run_id)
        return None if run is None else dict(run, steps=[dict(s) for s in run["steps"]])
