"""Tensor specifications and configurations shared by the fermionic modules."""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import ParseError


@dataclass(frozen=True)
class TensorSpec:
    """Ordered tensor factors B^{r,s}, listed left to right.

    The multiplicities L_i^(a) ignore the order; crystals and energies use it.
    """

    factors: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def parse(cls, items: Iterable[str]) -> "TensorSpec":
        factors = []
        for item in items:
            try:
                r, s = (int(part) for part in item.split(","))
            except ValueError as exc:
                raise ParseError(f"malformed tensor factor {item!r}, expected r,s") from exc
            if r < 1 or s < 1:
                raise ParseError(f"tensor factor {item!r} needs r, s >= 1")
            factors.append((r, s))
        return cls(tuple(factors))

    @classmethod
    def from_multiplicities(cls, multiplicities: Mapping[Tuple[int, int], int]) -> "TensorSpec":
        factors: List[Tuple[int, int]] = []
        for (a, i), count in sorted(multiplicities.items()):
            factors.extend([(a, i)] * count)
        return cls(tuple(factors))

    def multiplicities(self) -> Dict[Tuple[int, int], int]:
        return dict(Counter(self.factors))

    def multiplicity(self, a: int, i: int) -> int:
        return sum(1 for f in self.factors if f == (a, i))

    def node_widths(self, a: int) -> List[int]:
        return [s for r, s in self.factors if r == a]

    @property
    def max_width(self) -> int:
        return max((s for _, s in self.factors), default=0)

    def total_width(self) -> int:
        """sum of i * L_i^(a) over all factors."""
        return sum(s for _, s in self.factors)

    def canonical(self) -> "TensorSpec":
        return TensorSpec(tuple(sorted(self.factors)))

    def __str__(self) -> str:
        return " ".join(f"{r},{s}" for r, s in self.factors) or "(empty)"


@dataclass(frozen=True)
class Configuration:
    """Sequence of partitions nu^(1), ..., nu^(n), rows in weakly decreasing order."""

    partitions: Tuple[Tuple[int, ...], ...]

    @classmethod
    def empty(cls, n: int) -> "Configuration":
        return cls(((),) * n)

    @classmethod
    def from_partitions(cls, partitions: Sequence[Sequence[int]]) -> "Configuration":
        return cls(tuple(tuple(sorted((p for p in part if p > 0), reverse=True)) for part in partitions))

    @classmethod
    def from_multiplicities(cls, n: int, m: Mapping[Tuple[int, int], int]) -> "Configuration":
        rows: List[List[int]] = [[] for _ in range(n)]
        for (a, i), count in m.items():
            if count < 0:
                raise ValueError(f"negative multiplicity m_{i}^({a})")
            rows[a - 1].extend([i] * count)
        return cls.from_partitions(rows)

    @property
    def rank(self) -> int:
        return len(self.partitions)

    def m(self, a: int, i: int) -> int:
        return sum(1 for row in self.partitions[a - 1] if row == i)

    def multiplicities(self) -> Dict[Tuple[int, int], int]:
        result: Dict[Tuple[int, int], int] = {}
        for a, part in enumerate(self.partitions, start=1):
            for row in part:
                result[(a, row)] = result.get((a, row), 0) + 1
        return result

    def row_lengths(self, a: int) -> List[int]:
        """Distinct row lengths of nu^(a), decreasing."""
        return sorted(set(self.partitions[a - 1]), reverse=True)

    @property
    def max_part(self) -> int:
        return max((row for part in self.partitions for row in part), default=0)

    def is_empty(self) -> bool:
        return all(not part for part in self.partitions)

    def size(self, a: int) -> int:
        return sum(self.partitions[a - 1])

    def __str__(self) -> str:
        return " ".join("(" + ",".join(map(str, part)) + ")" if part else "()" for part in self.partitions)
