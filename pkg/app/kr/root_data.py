"""Affine Dynkin data and classical weight arithmetic.

Node numbering (node 0 is always the affine node):

    A_n^(1)        0 - 1 - ... - n - 0 (cycle)
    B_n^(1)        0, 1 attached to 2; chain 2 - ... - n; n-1 => n (n short)
    C_n^(1)        0 => 1 - ... - n-1 <= n
    D_n^(1)        0, 1 attached to 2; chain 2 - ... - n-2; n-1, n attached to n-2
    E_6^(1)        chain 1 - 2 - 3 - 4 - 5; 3 - 6 - 0
    E_7^(1)        chain 0 - 1 - ... - 6; 3 - 7
    E_8^(1)        chain 0 - 1 - ... - 7; 5 - 8
    F_4^(1)        0 - 1 - 2 => 3 - 4
    G_2^(1)        0 - 1 => 2 (triple)
    A_2n^(2)       0 <= 1 - ... - n-1 <= n
    A_2n^(2)dag    transpose of A_2n^(2)
    A_2n-1^(2)     0, 1 attached to 2; chain 2 - ... - n; n-1 <= n
    D_n+1^(2)      0 <= 1 - ... - n-1 => n
    E_6^(2)        0 - 1 - 2 <= 3 - 4
    D_4^(3)        0 - 1 <= 2 (triple)

Cartan entries follow A_ij = <alpha_i^vee, alpha_j>.
"""
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor, gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import sympy

from .errors import InvalidTypeError, ParseError


class Family(str, Enum):
    A1 = "A_n^(1)"
    B1 = "B_n^(1)"
    C1 = "C_n^(1)"
    D1 = "D_n^(1)"
    E1 = "E_n^(1)"
    F1 = "F_4^(1)"
    G1 = "G_2^(1)"
    A2EVEN = "A_2n^(2)"
    A2EVEN_DAG = "A_2n^(2)dag"
    A2ODD = "A_2n-1^(2)"
    D2 = "D_n+1^(2)"
    E2 = "E_6^(2)"
    D3 = "D_4^(3)"


_MIN_RANK = {
    Family.A1: 1,
    Family.B1: 3,
    Family.C1: 2,
    Family.D1: 4,
    Family.A2EVEN: 1,
    Family.A2EVEN_DAG: 1,
    Family.A2ODD: 3,
    Family.D2: 2,
}

_FIXED_RANK = {
    Family.F1: (4,),
    Family.G1: (2,),
    Family.E1: (6, 7, 8),
    Family.E2: (4,),
    Family.D3: (2,),
}

_TWIST = {
    Family.A2EVEN: 2,
    Family.A2EVEN_DAG: 2,
    Family.A2ODD: 2,
    Family.D2: 2,
    Family.E2: 2,
    Family.D3: 3,
}

_TYPE_PATTERN = re.compile(r"^([A-G])(\d+)~([123])(dag)?$")


@dataclass(frozen=True)
class AffineType:
    """An affine family together with the rank n of its classical part."""

    family: Family
    n: int

    def __post_init__(self):
        if self.family in _FIXED_RANK:
            if self.n not in _FIXED_RANK[self.family]:
                raise InvalidTypeError(f"{self.family.value} has no rank {self.n}")
        elif self.n < _MIN_RANK[self.family]:
            raise InvalidTypeError(
                f"{self.family.value} needs n >= {_MIN_RANK[self.family]}, got {self.n}"
            )

    @property
    def twist(self) -> int:
        return _TWIST.get(self.family, 1)

    @property
    def classical_nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def nodes(self) -> range:
        return range(0, self.n + 1)

    @property
    def is_simply_laced_untwisted(self) -> bool:
        return self.family in (Family.A1, Family.D1, Family.E1)

    @property
    def label(self) -> str:
        """Canonical type string, e.g. "A4~2dag"."""
        f, n = self.family, self.n
        if f == Family.A2EVEN:
            return f"A{2 * n}~2"
        if f == Family.A2EVEN_DAG:
            return f"A{2 * n}~2dag"
        if f == Family.A2ODD:
            return f"A{2 * n - 1}~2"
        if f == Family.D2:
            return f"D{n + 1}~2"
        if f == Family.E2:
            return "E6~2"
        if f == Family.D3:
            return "D4~3"
        return f"{f.name[0]}{n}~1"

    def __str__(self) -> str:
        return self.label


def parse_type(text: str) -> AffineType:
    """Parse a type string such as "A3~1", "C2~1", "A4~2dag" or "D4~3".

    The integer is the subscript N of X_N^(r), so twisted types give
    n = N/2 (A_2n^(2)), (N+1)/2 (A_2n-1^(2)), N-1 (D_N^(2)).
    """
    match = _TYPE_PATTERN.match(text.strip())
    if not match:
        raise ParseError(f"malformed type string: {text!r}")
    letter, big_n, twist, dag = match.group(1), int(match.group(2)), int(match.group(3)), match.group(4)
    if dag and not (letter == "A" and twist == 2 and big_n % 2 == 0):
        raise ParseError(f"'dag' only applies to A_2n^(2): {text!r}")

    if twist == 1:
        simple = {"A": Family.A1, "B": Family.B1, "C": Family.C1, "D": Family.D1,
                  "E": Family.E1, "F": Family.F1, "G": Family.G1}
        return AffineType(simple[letter], big_n)
    if twist == 2:
        if letter == "A":
            if big_n % 2 == 0:
                return AffineType(Family.A2EVEN_DAG if dag else Family.A2EVEN, big_n // 2)
            return AffineType(Family.A2ODD, (big_n + 1) // 2)
        if letter == "D":
            return AffineType(Family.D2, big_n - 1)
        if letter == "E" and big_n == 6:
            return AffineType(Family.E2, 4)
    if twist == 3 and letter == "D" and big_n == 4:
        return AffineType(Family.D3, 2)
    raise InvalidTypeError(f"no affine type {text!r}")


def _chain(lo: int, hi: int) -> List[Tuple[int, int, int, int]]:
    return [(i, i + 1, -1, -1) for i in range(lo, hi)]


def _bonds(t: AffineType) -> List[Tuple[int, int, int, int]]:
    """Bonds (i, j, A_ij, A_ji) of the affine diagram."""
    f, n = t.family, t.n
    if f == Family.A1:
        if n == 1:
            return [(0, 1, -2, -2)]
        return _chain(0, n) + [(n, 0, -1, -1)]
    if f == Family.B1:
        return [(0, 2, -1, -1), (1, 2, -1, -1)] + _chain(2, n - 1) + [(n - 1, n, -1, -2)]
    if f == Family.C1:
        return [(0, 1, -1, -2)] + _chain(1, n - 1) + [(n - 1, n, -2, -1)]
    if f == Family.D1:
        return ([(0, 2, -1, -1), (1, 2, -1, -1)] + _chain(2, n - 2)
                + [(n - 2, n - 1, -1, -1), (n - 2, n, -1, -1)])
    if f == Family.E1:
        if n == 6:
            return _chain(1, 5) + [(3, 6, -1, -1), (6, 0, -1, -1)]
        if n == 7:
            return _chain(0, 6) + [(3, 7, -1, -1)]
        return _chain(0, 7) + [(5, 8, -1, -1)]
    if f == Family.F1:
        return _chain(0, 2) + [(2, 3, -1, -2), (3, 4, -1, -1)]
    if f == Family.G1:
        return [(0, 1, -1, -1), (1, 2, -1, -3)]
    if f == Family.A2EVEN:
        if n == 1:
            return [(0, 1, -4, -1)]
        return [(0, 1, -2, -1)] + _chain(1, n - 1) + [(n - 1, n, -2, -1)]
    if f == Family.A2EVEN_DAG:
        if n == 1:
            return [(0, 1, -1, -4)]
        return [(0, 1, -1, -2)] + _chain(1, n - 1) + [(n - 1, n, -1, -2)]
    if f == Family.A2ODD:
        return [(0, 2, -1, -1), (1, 2, -1, -1)] + _chain(2, n - 1) + [(n - 1, n, -2, -1)]
    if f == Family.D2:
        return [(0, 1, -2, -1)] + _chain(1, n - 1) + [(n - 1, n, -1, -2)]
    if f == Family.E2:
        return _chain(0, 2) + [(2, 3, -2, -1), (3, 4, -1, -1)]
    return [(0, 1, -1, -1), (1, 2, -3, -1)]


def _primitive(vector: Sequence) -> Tuple[int, ...]:
    rationals = [_to_fraction(v) for v in vector]
    denominator = 1
    for r in rationals:
        denominator = denominator * r.denominator // gcd(denominator, r.denominator)
    ints = [int(r * denominator) for r in rationals]
    divisor = 0
    for v in ints:
        divisor = gcd(divisor, v)
    ints = [v // divisor for v in ints]
    if ints[0] < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class DynkinData:
    """Cartan matrix, Kac labels and t-factors of an affine type."""

    affine_type: AffineType
    cartan: Tuple[Tuple[int, ...], ...]
    a: Tuple[int, ...]
    a_dual: Tuple[int, ...]
    t: Tuple[int, ...]
    t_dual: Tuple[int, ...]
    bonds: Tuple[Tuple[int, int, int, int], ...] = field(repr=False)

    @property
    def classical_cartan(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(row[1:] for row in self.cartan[1:])

    def arrow_head(self, i: int, j: int) -> Optional[int]:
        """Node the arrow of a multiple bond i-j points to, or None if simple."""
        aij, aji = self.cartan[i][j], self.cartan[j][i]
        if aij * aji <= 1:
            return None
        return j if abs(aij) < abs(aji) else i


@lru_cache(maxsize=None)
def dynkin_data(t: AffineType) -> DynkinData:
    size = t.n + 1
    matrix = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    bonds = _bonds(t)
    for i, j, aij, aji in bonds:
        matrix[i][j] = aij
        matrix[j][i] = aji

    cartan = sympy.Matrix(matrix)
    a = _primitive(cartan.nullspace()[0])
    a_dual = _primitive(cartan.T.nullspace()[0])

    t_vals, t_dual_vals = [], []
    for i in range(size):
        ti = max(Fraction(a[i], a_dual[i]), Fraction(a_dual[0]))
        tdi = max(Fraction(a_dual[i], a[i]), Fraction(a[0]))
        if ti.denominator != 1 or tdi.denominator != 1:
            raise InvalidTypeError(f"non-integral t-factor at node {i} of {t}")
        t_vals.append(int(ti))
        t_dual_vals.append(int(tdi))

    return DynkinData(
        affine_type=t,
        cartan=tuple(tuple(row) for row in matrix),
        a=a,
        a_dual=a_dual,
        t=tuple(t_vals),
        t_dual=tuple(t_dual_vals),
        bonds=tuple(bonds),
    )


def _coeff_str(coeffs: Sequence, symbol: str) -> str:
    parts = []
    for index, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        body = f"{symbol}{index}" if magnitude == 1 else f"{magnitude}{symbol}{index}"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


@dataclass(frozen=True)
class Weight:
    """Classical weight in fundamental-weight coordinates (Lambda_1..Lambda_n)."""

    coeffs: Tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def fundamental(cls, n: int, a: int) -> "Weight":
        return cls(tuple(1 if b == a else 0 for b in range(1, n + 1)))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return _coeff_str(self.coeffs, "L")


@dataclass(frozen=True)
class RootVector:
    """Classical element of Q tensor QQ in simple-root coordinates."""

    coeffs: Tuple[Fraction, ...]

    def is_positive_integral(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_ints(self) -> Tuple[int, ...]:
        if any(Fraction(c).denominator != 1 for c in self.coeffs):
            raise ValueError(f"root vector {self} is not integral")
        return tuple(int(c) for c in self.coeffs)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def _to_fraction(value) -> Fraction:
    numerator, denominator = sympy.fraction(sympy.nsimplify(value))
    return Fraction(int(numerator), int(denominator))


def exact_inverse(matrix: Sequence[Sequence[int]]) -> Tuple[Tuple[Fraction, ...], ...]:
    inverse = sympy.Matrix(matrix).inv()
    return tuple(tuple(_to_fraction(v) for v in inverse.row(r)) for r in range(inverse.rows))


@lru_cache(maxsize=None)
def classical_cartan_inverse(t: AffineType) -> Tuple[Tuple[Fraction, ...], ...]:
    """Inverse of the classical Cartan matrix, as exact fractions."""
    return exact_inverse(dynkin_data(t).classical_cartan)


@lru_cache(maxsize=65536)
def to_root_coords(t: AffineType, w: Weight) -> RootVector:
    """Coefficients c with w = sum_a c_a alpha_a."""
    inverse = classical_cartan_inverse(t)
    # alpha_b = sum_a A_ab Lambda_a, so w = A c and c = A^{-1} w
    return RootVector(tuple(sum((inverse[a][b] * w.coeffs[b] for b in range(t.n)), Fraction(0))
                            for a in range(t.n)))


def from_root_coords(t: AffineType, r: Sequence) -> Weight:
    """Expand sum_a r_a alpha_a in fundamental coordinates."""
    cartan = dynkin_data(t).classical_cartan
    values = [sum((Fraction(cartan[a][b]) * Fraction(r[b]) for b in range(t.n)), Fraction(0))
              for a in range(t.n)]
    if any(v.denominator != 1 for v in values):
        raise ValueError("root combination is not an integral weight")
    return Weight(tuple(int(v) for v in values))


def dominates(t: AffineType, mu: Weight, nu: Weight) -> bool:
    """mu >= nu in dominance order, i.e. mu - nu lies in Q+."""
    return to_root_coords(t, mu - nu).is_positive_integral()


def inv_form(t: AffineType, x: Sequence, y: Sequence) -> Fraction:
    """Normalized invariant form on root coordinates over the classical nodes.

    (alpha_a | alpha_b) = (a_a^vee / a_a) A_ab.
    """
    data = dynkin_data(t)
    total = Fraction(0)
    for a in range(1, t.n + 1):
        xa = Fraction(x[a - 1])
        if xa == 0:
            continue
        scale = Fraction(data.a_dual[a], data.a[a])
        for b in range(1, t.n + 1):
            total += xa * Fraction(y[b - 1]) * scale * data.cartan[a][b]
    return total


def simple_root_norms(t: AffineType) -> Tuple[Fraction, ...]:
    data = dynkin_data(t)
    return tuple(Fraction(2 * data.a_dual[a], data.a[a]) for a in t.classical_nodes)


def pairing_with_root(t: AffineType, w: Weight, a: int) -> Fraction:
    """(w | alpha_a) for a classical node a."""
    data = dynkin_data(t)
    return Fraction(data.a_dual[a], data.a[a]) * w.coeffs[a - 1]


def pairing_with_fundamental(t: AffineType, w: Weight, a: int) -> Fraction:
    """(w | Lambda_a) for a classical node a."""
    data = dynkin_data(t)
    return to_root_coords(t, w).coeffs[a - 1] * Fraction(data.a_dual[a], data.a[a])


def dominant_box(cartan: Sequence[Sequence[int]], top: Sequence[int],
                 bound: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Yield (d, top - A d) over the box 0 <= d <= bound with a dominant difference."""
    size = len(top)
    for d in product(*(range(b + 1) for b in bound)):
        tau = tuple(top[a] - sum(cartan[a][b] * d[b] for b in range(size)) for a in range(size))
        if all(c >= 0 for c in tau):
            yield d, tau


def floor_root_coords(t: AffineType, w: Weight) -> Tuple[int, ...]:
    return tuple(floor(c) for c in to_root_coords(t, w).coeffs)


def parse_weight(text: str, n: Optional[int] = None) -> Weight:
    """Parse "a1,a2,...,an" into a Weight."""
    try:
        coeffs = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"malformed weight {text!r}") from exc
    if n is not None and len(coeffs) != n:
        raise ParseError(f"weight {text!r} has {len(coeffs)} coefficients, expected {n}")
    return Weight(coeffs)


def weight_from_partition(parts: Sequence[int], n: int) -> Weight:
    """Type A_n weight of a partition with at most n+1 rows."""
    padded = list(parts) + [0] * (n + 1 - len(parts))
    return Weight(tuple(padded[i] - padded[i + 1] for i in range(n)))

