import pytest

from app.schemas import VerifyReport
from app.trace import Tracer
from app.trace.store import MemoryStore
from app.verify import exit_code, run_case, run_verification
from app.verify.budget import Budget
from app.verify.cases import Case, tensor_specs
from app.verify.figures import A3_TREE, expected_rows, kleber_rows

TINY = Budget(
    name="tiny",
    figures=False,
    kleber_types=["A1~1"],
    kleber_max_total=2,
    crystal_types=["C2~1"],
    crystal_max_s=1,
    xm_types=["A1~1"],
    xm_max_factors=2,
    xm_max_s=1,
)


class TestCases:
    def test_tensor_specs(self):
        found = {spec.factors for spec in tensor_specs([1], 2)}
        assert found == {((1, 1),), ((1, 1), (1, 1)), ((1, 2),)}

    def test_kleber_figure(self):
        count, rows = kleber_rows(A3_TREE)
        assert count == A3_TREE.node_count
        assert rows == expected_rows(A3_TREE)

    @pytest.mark.parametrize("case", [
        Case("figure_kleber", name="kleber-A3"),
        Case("figure_virtual", name="virtual-kleber-C2"),
        Case("kleber_oracle", "A2~1", ((1, 1), (2, 1))),
        Case("virtual_oracle", "C2~1", ((1, 1), (2, 1))),
        Case("rigged_virtual", "D3~2", ((1, 1), (1, 1))),
        Case("rigged_virtual", "A4~2dag", ((1, 1), (1, 1))),
        Case("crystal", "A2~1", ((2, 2),)),
        Case("crystal", "D3~2", ((1, 2),)),
        Case("crystal", "A2~2dag", ((1, 1),)),
        Case("crystal", "A2~2dag", ((1, 2),)),
        Case("crystal", "A2~2dag", ((1, 3),)),
        Case("virtual_crystal", "A4~2dag", ((1, 3),)),
        Case("virtual_crystal", "D3~2", ((1, 2),)),
        Case("virtual_crystal", "C2~1", ((1, 2),)),
        Case("energy", "C2~1", ((1, 1), (1, 2))),
        Case("yang_baxter", "C2~1", ((1, 1), (1, 1), (1, 2))),
        Case("x_equals_m", "C2~1", ((1, 1), (1, 1))),
        Case("x_equals_m", "A4~2dag", ((1, 1), (1, 1))),
        Case("x_equals_m", "A4~2dag", ((1, 2), (1, 2), (1, 2))),
        Case("xv_equals_x", "C2~1", ((1, 1), (1, 2))),
    ], ids=lambda case: case.key)
    def test_passing_cases(self, case):
        result = run_case(case)
        assert result.passed, result.detail
        assert result.key == case.key

    def test_failures_are_reported(self):
        result = run_case(Case("crystal", "C2~1", ((2, 1),)))
        assert not result.passed
        assert result.failure_class == "error"
        assert "UnsupportedTypeError" in result.detail["message"]

    def test_key(self):
        assert Case("energy", "C2~1", ((1, 1), (1, 2))).key == "energy/C2~1/1,1 1,2"


class TestDriver:
    def test_tiny_budget(self, memory_tracer):
        report = run_verification(TINY)
        assert report.total == 6
        assert report.failures == 0
        assert exit_code(report) == 0
        run = memory_tracer.store.list_runs()[0]
        assert run["name"] == "verify"
        steps = memory_tracer.store.get_run(run["id"])["steps"]
        assert [s["name"] for s in steps] == ["crystal", "kleber_oracle", "x_equals_m"]

    def test_report_is_deterministic(self):
        first = run_verification(TINY, tracer=Tracer(MemoryStore()))
        second = run_verification(TINY, tracer=Tracer(MemoryStore()))
        assert first.model_dump_json() == second.model_dump_json()
        assert [c.key for c in first.cases] == sorted(c.key for c in first.cases)

    def test_worker_pool_gives_the_same_report(self):
        serial = run_verification(TINY, workers=1)
        parallel = run_verification(TINY, workers=2)
        assert serial == parallel

    def test_exit_code_is_capped(self):
        report = VerifyReport(budget="x", total=300, failures=300, cases=[])
        assert exit_code(report) == 125
