import json

import pytest

from app.kr.errors import ParseError
from app.settings import load_settings
from app.verify import build_cases, load_budget
from app.verify.budget import Budget


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("KR_TRACE_DB_PATH", "KR_GRAPH_CAP", "KR_WORKERS", "KR_LOG_LEVEL", "KR_HOST", "KR_PORT"):
            monkeypatch.delenv(name, raising=False)
        settings = load_settings()
        assert settings.trace_db_path is None
        assert settings.graph_cap == 1_000_000
        assert settings.workers == 1
        assert (settings.host, settings.port) == ("127.0.0.1", 8000)

    def test_server_address(self, monkeypatch):
        monkeypatch.setenv("KR_HOST", "0.0.0.0")
        monkeypatch.setenv("KR_PORT", "9000")
        settings = load_settings()
        assert (settings.host, settings.port) == ("0.0.0.0", 9000)

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("KR_GRAPH_CAP", "500")
        monkeypatch.setenv("KR_WORKERS", "4")
        monkeypatch.setenv("KR_LOG_LEVEL", "debug")
        settings = load_settings()
        assert (settings.graph_cap, settings.workers, settings.log_level) == (500, 4, "debug")

    def test_invalid_values_fall_back(self, monkeypatch):
        monkeypatch.setenv("KR_WORKERS", "0")
        assert load_settings().workers == 1


class TestBudget:
    def test_builtin(self):
        assert load_budget("default").name == "default"
        assert load_budget("smoke").xm_max_factors == 2

    def test_default_covers_total_width_six(self):
        budget = load_budget("default")
        assert all(budget.kleber_total(t) == 6 for t in budget.kleber_types)
        assert all(budget.virtual_total(t) == 6 for t in budget.virtual_types)

    def test_quick_overrides(self):
        budget = load_budget("quick")
        assert budget.name == "quick"
        assert budget.kleber_total("A3~1") == 4
        assert budget.kleber_total("A2~1") == budget.kleber_max_total
        assert budget.virtual_total("B3~1") == 3
        assert budget.virtual_total("C2~1") == 4

    def test_json_file(self, tmp_path):
        path = tmp_path / "tiny.json"
        path.write_text(json.dumps({"kleber_types": ["A1~1"], "kleber_max_total": 2}))
        budget = load_budget(str(path))
        assert budget.name == "tiny"
        assert budget.kleber_types == ["A1~1"]

    def test_bad_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            load_budget(str(path))
        with pytest.raises(ParseError):
            load_budget(str(tmp_path / "missing.json"))

    def test_cases_are_sorted_and_unique(self):
        keys = [case.key for case in build_cases(load_budget("smoke"))]
        assert keys == sorted(set(keys))
        assert "figure_kleber/kleber-A3" in keys

    def test_rank_one_dag_is_skipped(self):
        budget = Budget(figures=False, virtual_types=["A2~2dag"], xv_types=["A2~2dag"])
        assert build_cases(budget) == []
