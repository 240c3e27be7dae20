"""Verification budgets: which types, tensor sizes and widths each check family covers."""
import json
from pathlib import Path
from typing import Dict, List

from pydantic import BaseModel, Field, ValidationError

from app.kr.errors import ParseError


class Budget(BaseModel):
    """Bounds for every check family; per-type overrides tighten `*_max_total`."""

    name: str = "custom"
    figures: bool = True
    kleber_types: List[str] = Field(default_factory=list)
    kleber_max_total: int = 6
    kleber_overrides: Dict[str, int] = Field(default_factory=dict)
    virtual_types: List[str] = Field(default_factory=list)
    virtual_max_total: int = 6
    virtual_overrides: Dict[str, int] = Field(default_factory=dict)
    rigged_max_total: int = 3
    crystal_types: List[str] = Field(default_factory=list)
    crystal_max_s: int = 3
    virtual_crystal_types: List[str] = Field(default_factory=list)
    virtual_crystal_max_s: int = 3
    energy_types: List[str] = Field(default_factory=list)
    energy_max_s: int = 2
    yang_baxter_types: List[str] = Field(default_factory=list)
    xm_types: List[str] = Field(default_factory=list)
    xm_max_factors: int = 3
    xm_max_s: int = 2
    xv_types: List[str] = Field(default_factory=list)
    xv_max_factors: int = 2

    def kleber_total(self, type_label: str) -> int:
        return self.kleber_overrides.get(type_label, self.kleber_max_total)

    def virtual_total(self, type_label: str) -> int:
        return self.virtual_overrides.get(type_label, self.virtual_max_total)


_VIRTUAL_SIX = ["C2~1", "A4~2", "A4~2dag", "D3~2", "A5~2", "B3~1"]

DEFAULT_BUDGET = Budget(
    name="default",
    kleber_types=["A1~1", "A2~1", "A3~1", "D4~1"],
    virtual_types=_VIRTUAL_SIX,
    crystal_types=["A1~1", "A2~1", "A3~1", "B3~1", "C2~1", "C3~1", "A2~2", "A4~2", "A6~2",
                   "A2~2dag", "A4~2dag", "A6~2dag", "A5~2", "D3~2", "D4~2"],
    virtual_crystal_types=["C2~1", "C3~1", "A4~2", "A6~2", "A4~2dag", "A6~2dag",
                           "D3~2", "D4~2", "A5~2", "B3~1"],
    energy_types=["A1~1", "A2~1", "C2~1", "A2~2", "A4~2", "A2~2dag", "A4~2dag", "D3~2"],
    yang_baxter_types=["A2~1", "C2~1", "D3~2"],
    xm_types=["A1~1", "A2~1", "C2~1", "A2~2", "A4~2", "A4~2dag", "D3~2"],
    xv_types=["C2~1", "A4~2", "A4~2dag", "D3~2"],
)

QUICK_BUDGET = DEFAULT_BUDGET.model_copy(update={
    "name": "quick",
    "kleber_overrides": {"A3~1": 4, "D4~1": 3},
    "virtual_max_total": 4,
    "virtual_overrides": {"B3~1": 3, "A5~2": 3},
})

SMOKE_BUDGET = Budget(
    name="smoke",
    kleber_types=["A1~1", "A2~1"],
    kleber_max_total=3,
    virtual_types=["C2~1", "D3~2"],
    virtual_max_total=2,
    rigged_max_total=2,
    crystal_types=["A2~1", "C2~1", "D3~2"],
    crystal_max_s=2,
    virtual_crystal_types=["C2~1"],
    virtual_crystal_max_s=2,
    energy_types=["A1~1", "C2~1"],
    energy_max_s=1,
    yang_baxter_types=[],
    xm_types=["A1~1", "C2~1"],
    xm_max_factors=2,
    xm_max_s=1,
    xv_types=["C2~1"],
    xv_max_factors=1,
)

BUILTIN_BUDGETS = {"default": DEFAULT_BUDGET, "quick": QUICK_BUDGET, "smoke": SMOKE_BUDGET}


def load_budget(name_or_path: str) -> Budget:
    """A built-in budget by name, or a JSON budget file."""
    if name_or_path in BUILTIN_BUDGETS:
        return BUILTIN_BUDGETS[name_or_path]
    path = Path(name_or_path)
    if not path.is_file():
        raise ParseError(f"unknown budget {name_or_path!r}: not a built-in name or a file")
    try:
        data = json.loads(path.read_text())
        data.setdefault("name", path.stem)
        return Budget(**data)
    except (json.JSONDecodeError, ValidationError) as e:
        raise ParseError(f"invalid budget file {path}: {e}") from e
