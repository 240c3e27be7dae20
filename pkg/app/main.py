import json
from typing import Any, Dict, List

from fastapi import FastAPI, HTTPException

from app.cli import cmd_crystal, cmd_m, cmd_tree, cmd_vtree, cmd_x
from app.kr.errors import GraphCapExceeded, InvalidTypeError, KRError, ParseError, UnsupportedTypeError
from app.schemas import SCHEMAS, JobSpec, RunSummary
from app.settings import get_settings
from app.trace import get_tracer

app = FastAPI(title="KR toolkit")

_JOBS = {"m": cmd_m, "x": cmd_x, "tree": cmd_tree, "vtree": cmd_vtree, "crystal": cmd_crystal}


def _status_for(error: KRError) -> int:
    if isinstance(error, (ParseError, InvalidTypeError)):
        return 400
    if isinstance(error, GraphCapExceeded):
        return 413
    if isinstance(error, UnsupportedTypeError):
        return 422
    return 500


@app.post("/api/jobs")
async def run_job(job: JobSpec) -> Dict[str, Any]:
    """Run one job and return its JSON document"""
    if job.command not in _JOBS:
        raise HTTPException(status_code=400, detail=f"command {job.command!r} is only available from the CLI")
    job = job.model_copy(update={"format": "json"})
    try:
        return json.loads(_JOBS[job.command](job))
    except KRError as e:
        raise HTTPException(status_code=_status_for(e), detail=f"{type(e).__name__}: {e}")


@app.get("/api/runs", response_model=List[RunSummary])
async def list_runs(limit: int = 50):
    """Recent traced runs, newest first"""
    return [RunSummary(id=run["id"], name=run["name"], status=run.get("status"),
                       duration_ms=run.get("duration_ms"), metadata=run.get("metadata") or {})
            for run in get_tracer().store.list_runs(limit=limit)]


@app.get("/api/runs/{run_id}")
async def run_detail(run_id: str) -> Dict[str, Any]:
    """A traced run with its steps and checks"""
    run = get_tracer().store.get_run(run_id)
    if not run:
        raise HTTPException(status_code=404, detail="Run not found")
    return run


@app.get("/api/schemas/{name}")
async def schema(name: str) -> Dict[str, Any]:
    if name not in SCHEMAS:
        raise HTTPException(status_code=404, detail=f"unknown schema {name!r}")
    return SCHEMAS[name].model_json_schema()


if __name__ == "__main__":
    import uvicorn
    settings = get_settings()
    uvicorn.run(app, host=settings.host, port=settings.port)
