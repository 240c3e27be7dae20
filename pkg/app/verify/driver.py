"""Run a verification budget and collect a deterministic report."""
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from itertools import groupby
from typing import List, Optional

from app.schemas import CaseResult, VerifyReport
from app.trace import Tracer, get_tracer

from .budget import Budget
from .cases import Case, build_cases, run_case

logger = logging.getLogger(__name__)

MAX_EXIT_CODE = 125


def _run_group(cases: List[Case], executor: Optional[Executor]) -> List[CaseResult]:
    if executor is None:
        return [run_case(case) for case in cases]
    return list(executor.map(run_case, cases, chunksize=max(1, len(cases) // 32)))


def run_verification(budget: Budget, workers: int = 1, tracer: Optional[Tracer] = None) -> VerifyReport:
    """
    Run every case of the budget, one traced step per check family.

    Args:
        budget: Which types and sizes to cover
        workers: Worker processes; 1 runs everything in this process
        tracer: Optional tracer (the process-wide one by default)

    Returns:
        Report with cases sorted by key; it carries no timings or timestamps.
    """
    tracer = tracer or get_tracer()
    cases = build_cases(budget)
    logger.info("verifying budget %s: %d cases on %d worker(s)", budget.name, len(cases), workers)
    results: List[CaseResult] = []
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        with tracer.run("verify", metadata={"budget": budget.name, "cases": len(cases)}) as run:
            for check, group in groupby(sorted(cases, key=lambda c: (c.check, c.key)), key=lambda c: c.check):
                group = list(group)
                with run.step(check, params={"cases": len(group)}) as step:
                    outcome = _run_group(group, executor)
                    failed = [r for r in outcome if not r.passed]
                    step.add_checks([{"key": r.key, "passed": r.passed, "failure_class": r.failure_class}
                                     for r in outcome])
                    step.set_output({"passed": len(outcome) - len(failed), "failed": len(failed)})
                if failed:
                    logger.warning("%s: %d of %d cases failed", check, len(failed), len(group))
                results.extend(outcome)
    finally:
        if executor is not None:
            executor.shutdown()
    results.sort(key=lambda r: r.key)
    failures = sum(1 for r in results if not r.passed)
    return VerifyReport(budget=budget.name, total=len(results), failures=failures, cases=results)


def exit_code(report: VerifyReport) -> int:
    """Number of failing cases, capped to stay clear of shell signal codes."""
    return min(report.failures, MAX_EXIT_CODE)
