import json
import logging
import os
import sqlite3
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from . import Store

logger = logging.getLogger(__name__)

_JSON_COLUMNS = {"metadata": {}, "params": {}, "output": {}, "checks": None}


def _decode(row: sqlite3.Row) -> Dict[str, Any]:
    record = dict(row)
    for column, fallback in _JSON_COLUMNS.items():
        if column not in record:
            continue
        raw = record[column]
        try:
            record[column] = json.loads(raw) if raw else fallback
        except (json.JSONDecodeError, TypeError):
            logger.warning("unreadable %s column in trace record %s", column, record.get("id"))
            record[column] = fallback
    return record


class SQLiteStore(Store):
    """SQLite implementation of the trace store"""

    def __init__(self, db_path: Optional[str] = None):
        """
        Open (and create if needed) the trace database.

        Args:
            db_path: Path to the SQLite file. If None, uses KR_TRACE_DB_PATH or "kr_trace.db"
        """
        if db_path is None:
            db_path = os.getenv("KR_TRACE_DB_PATH") or "kr_trace.db"
        db_dir = os.path.dirname(db_path)
        if db_dir:
            os.makedirs(db_dir, exist_ok=True)
        self.db_path = db_path
        self._init_db()

    def _get_connection(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        return conn

    def _execute(self, sql: str, args: tuple = ()):
        conn = self._get_connection()
        try:
            conn.execute(sql, args)
            conn.commit()
        finally:
            conn.close()

    def _init_db(self):
        conn = self._get_connection()
        try:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    id TEXT PRIMARY KEY,
                    name TEXT NOT NULL,
                    started_at TEXT NOT NULL,
                    duration_ms INTEGER,
                    status TEXT NOT NULL,
                    metadata TEXT,
                    error TEXT
                )
            """)
            conn.execute("""
                CREATE TABLE IF NOT EXISTS steps (
                    id TEXT PRIMARY KEY,
                    run_id TEXT NOT NULL,
                    name TEXT NOT NULL,
                    step_index INTEGER NOT NULL,
                    duration_ms INTEGER,
                    status TEXT NOT NULL,
                    params TEXT,
                    note TEXT,
                    output TEXT,
                    checks TEXT,
                    error TEXT,
                    FOREIGN KEY (run_id) REFERENCES runs(id)
                )
            """)
            conn.execute("CREATE INDEX IF NOT EXISTS idx_steps_run_id ON steps(run_id)")
            conn.execute("CREATE INDEX IF NOT EXISTS idx_runs_started_at ON runs(started_at DESC)")
            conn.commit()
        finally:
            conn.close()

    def create_run(self, run_id: str, name: str, metadata: Dict[str, Any]):
        self._execute(
            "INSERT INTO runs (id, name, started_at, status, metadata) VALUES (?, ?, ?, ?, ?)",
            (run_id, name, datetime.now(timezone.utc).isoformat(), "running", json.dumps(metadata)),
        )

    def finish_run(self, run_id: str, duration_ms: int, status: str,
                   error: Optional[str] = None):
        self._execute(
            "UPDATE runs SET duration_ms = ?, status = ?, error = ? WHERE id = ?",
            (duration_ms, status, error, run_id),
        )

    def create_step(self, step_id: str, run_id: str, name: str, index: int,
                    params: Dict[str, Any], note: Optional[str]):
        self._execute(
            "INSERT INTO steps (id, run_id, name, step_index, status, params, note)"
            " VALUES (?, ?, ?, ?, ?, ?, ?)",
            (step_id, run_id, name, index, "running", json.dumps(params), note),
        )

    def finish_step(self, step_id: str, duration_ms: int, status: str,
                    output: Optional[Dict[str, Any]] = None,
                    checks: Optional[List[Dict[str, Any]]] = None,
                    error: Optional[str] = None):
        self._execute(
            "UPDATE steps SET duration_ms = ?, status = ?, output = ?, checks = ?, error = ?"
            " WHERE id = ?",
            (duration_ms, status,
             json.dumps(output) if output else None,
             json.dumps(checks) if checks else None,
             error, step_id),
        )

    def list_runs(self, limit: int = 100) -> List[Dict[str, Any]]:
        conn = self._get_connection()
        try:
            rows = conn.execute(
                "SELECT * FROM runs ORDER BY started_at DESC LIMIT ?", (limit,)).fetchall()
            return [_decode(row) for row in rows]
        finally:
            conn.close()

    def get_run(self, run_id: str) -> Optional[Dict[str, Any]]:
        conn = self._get_connection()
        try:
            row = conn.execute("SELECT * FROM runs WHERE id = ?", (run_id,)).fetchone()
            if not row:
                return None
            run = _decode(row)
            step_rows = conn.execute(
                "SELECT * FROM steps WHERE run_id = ? ORDER BY step_index ASC", (run_id,)).fetchall()
            steps = []
            for step_row in step_rows:
                step = _decode(step_row)
                step["index"] = step.pop("step_index")
                steps.append(step)
            run["steps"] = steps
            return run
        finally:
            conn.close()
