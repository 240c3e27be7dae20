"""Batch verification of the tree, crystal and X = M checks."""
from .budget import Budget, load_budget
from .cases import build_cases, run_case
from .driver import exit_code, run_verification

__all__ = ["Budget", "build_cases", "exit_code", "load_budget", "run_case", "run_verification"]
