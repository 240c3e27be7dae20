"""Vacancy numbers, cocharge, the fermionic polynomial M and rigged configurations."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from sympy.utilities.iterables import partitions

from .errors import ConjectureViolation, UnsupportedTypeError
from .qpoly import QPolynomial, gaussian_binomial
from .root_data import AffineType, Family, Weight, dynkin_data, exact_inverse
from .tensor_spec import Configuration, TensorSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FermionicData:
    """Form, t-factors and the right-hand-side map used by the configuration equation.

    For A_2n^(2) the roots alpha~ are the simple roots of B_n and weights are
    carried over by iota(Lambda_a) = Lambda_a (a < n), iota(Lambda_n) = 2 Lambda_n.
    """

    n: int
    gram: Tuple[Tuple[Fraction, ...], ...]
    t: Tuple[int, ...]
    t_dual: Tuple[int, ...]
    rhs_cartan: Tuple[Tuple[int, ...], ...]
    rhs_cartan_inverse: Tuple[Tuple[Fraction, ...], ...]
    iota: Tuple[int, ...]

    def t_of(self, a: int) -> int:
        return self.t[a - 1]

    def t_dual_of(self, a: int) -> int:
        return self.t_dual[a - 1]


def _type_b_cartan(n: int) -> List[List[int]]:
    matrix = [[2 if a == b else 0 for b in range(n)] for a in range(n)]
    for a in range(n - 1):
        matrix[a][a + 1] = -1
        matrix[a + 1][a] = -1
    if n >= 2:
        matrix[n - 1][n - 2] = -2
    return matrix


@lru_cache(maxsize=None)
def fermionic_data(t: AffineType) -> FermionicData:
    if t.family == Family.A2EVEN_DAG:
        raise UnsupportedTypeError(
            f"{t} has no direct fermionic formula; use the virtual route")
    data = dynkin_data(t)
    n = t.n
    t_vals = tuple(data.t[a] for a in t.classical_nodes)
    t_dual_vals = tuple(data.t_dual[a] for a in t.classical_nodes)

    if t.family == Family.A2EVEN:
        rhs_cartan = _type_b_cartan(n)
        gram = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            gram[a][a] = Fraction(4 if a < n - 1 else 2)
            if a + 1 < n:
                gram[a][a + 1] = gram[a + 1][a] = Fraction(-2)
        iota = tuple(1 if a < n else 2 for a in t.classical_nodes)
    else:
        rhs_cartan = [list(row) for row in data.classical_cartan]
        gram = [[Fraction(data.a_dual[a], data.a[a]) * data.cartan[a][b] for b in t.classical_nodes]
                for a in t.classical_nodes]
        iota = (1,) * n

    return FermionicData(
        n=n,
        gram=tuple(tuple(row) for row in gram),
        t=t_vals,
        t_dual=t_dual_vals,
        rhs_cartan=tuple(tuple(row) for row in rhs_cartan),
        rhs_cartan_inverse=exact_inverse(rhs_cartan),
        iota=iota,
    )


def top_weight(t: AffineType, L: TensorSpec) -> Weight:
    """sum_{a,i} i L_i^(a) Lambda_a."""
    coeffs = [0] * t.n
    for r, s in L.factors:
        if not 1 <= r <= t.n:
            raise ValueError(f"tensor factor node {r} outside 1..{t.n}")
        coeffs[r - 1] += s
    return Weight(tuple(coeffs))


def rhs_root_coords(t: AffineType, L: TensorSpec, lam: Weight) -> Tuple[Fraction, ...]:
    """alpha~-coordinates of iota(sum i L Lambda - lambda)."""
    fd = fermionic_data(t)
    diff = top_weight(t, L) - lam
    lifted = [diff.coeffs[a] * fd.iota[a] for a in range(t.n)]
    return tuple(sum((fd.rhs_cartan_inverse[a][b] * lifted[b] for b in range(t.n)), Fraction(0))
                 for a in range(t.n))


def vacancy(t: AffineType, L: TensorSpec, nu: Configuration, a: int, i: int) -> int:
    """p_i^(a) = sum_k L_k^(a) min(i,k) - (1/t_a^v) sum_{b,k} (a~_a|a~_b) min(t_b i, t_a k) m_k^(b)."""
    fd = fermionic_data(t)
    value = Fraction(sum(min(i, k) for k in L.node_widths(a)))
    ta = fd.t_of(a)
    correction = Fraction(0)
    for b in range(1, t.n + 1):
        form = fd.gram[a - 1][b - 1]
        if form == 0:
            continue
        tb = fd.t_of(b)
        correction += form * sum(min(tb * i, ta * k) for k in nu.partitions[b - 1])
    value -= correction / fd.t_dual_of(a)
    if value.denominator != 1:
        raise ConjectureViolation(f"non-integral vacancy number p_{i}^({a}) = {value} for {t}",
                                  {"type": t.label, "a": a, "i": i, "value": str(value)})
    return int(value)


def _vacancy_horizon(t: AffineType, L: TensorSpec, nu: Configuration) -> int:
    fd = fermionic_data(t)
    return max(fd.t) * max(nu.max_part, L.max_width) + 1


def vacancy_table(t: AffineType, L: TensorSpec, nu: Configuration) -> Dict[Tuple[int, int], int]:
    """Vacancy numbers p_i^(a) at every row length i occurring in nu^(a)."""
    return {(a, i): vacancy(t, L, nu, a, i)
            for a in range(1, t.n + 1) for i in nu.row_lengths(a)}


def is_admissible(t: AffineType, L: TensorSpec, nu: Configuration) -> bool:
    # beyond the horizon every min() saturates and p_i^(a) is constant in i
    horizon = _vacancy_horizon(t, L, nu)
    return all(vacancy(t, L, nu, a, i) >= 0
               for a in range(1, t.n + 1) for i in range(1, horizon + 1))


def cocharge(t: AffineType, nu: Configuration) -> Fraction:
    """cc(nu) = 1/2 sum_{a,b,j,k} (a~_a|a~_b) min(t_b j, t_a k) m_j^(a) m_k^(b)."""
    fd = fermionic_data(t)
    total = Fraction(0)
    for a in range(1, t.n + 1):
        for b in range(1, t.n + 1):
            form = fd.gram[a - 1][b - 1]
            if form == 0:
                continue
            ta, tb = fd.t_of(a), fd.t_of(b)
            total += form * sum(min(tb * j, ta * k)
                                for j in nu.partitions[a - 1] for k in nu.partitions[b - 1])
    return total / 2


def satisfies_config_equation(t: AffineType, L: TensorSpec, lam: Weight, nu: Configuration) -> bool:
    rhs = rhs_root_coords(t, L, lam)
    return all(Fraction(nu.size(a)) == rhs[a - 1] for a in range(1, t.n + 1))


def _partitions_of(total: int) -> List[Tuple[int, ...]]:
    if total == 0:
        return [()]
    result = []
    for part in partitions(total):
        rows: List[int] = []
        for length, count in sorted(part.items(), reverse=True):
            rows.extend([length] * count)
        result.append(tuple(rows))
    return result


def brute_force_configs(t: AffineType, L: TensorSpec, lam: Weight) -> Set[Configuration]:
    """All admissible (B, lambda)-configurations, by exhaustive enumeration."""
    rhs = rhs_root_coords(t, L, lam)
    if any(c < 0 or c.denominator != 1 for c in rhs):
        return set()
    choices = [_partitions_of(int(c)) for c in rhs]
    found = set()
    for rows in product(*choices):
        nu = Configuration(tuple(rows))
        if is_admissible(t, L, nu):
            found.add(nu)
    logger.debug("brute force over %s %s at %s: %d configurations", t, L, lam, len(found))
    return found


def configurations(t: AffineType, L: TensorSpec, lam: Weight) -> Set[Configuration]:
    """C(B, lambda) via the Kleber tree or the virtual Kleber tree."""
    if t.is_simply_laced_untwisted:
        from .kleber import configs
        return configs(t, L, lam)
    from .virtual_kleber import virtual_configs
    return virtual_configs(t, L, lam)


def term_for(t: AffineType, L: TensorSpec, nu: Configuration) -> QPolynomial:
    fd = fermionic_data(t)
    term = QPolynomial.monomial(cocharge(t, nu))
    for a in range(1, t.n + 1):
        for i in nu.row_lengths(a):
            term = term * gaussian_binomial(nu.m(a, i), vacancy(t, L, nu, a, i), fd.t_dual_of(a))
    return term


def m_polynomial(t: AffineType, L: TensorSpec, lam: Weight) -> QPolynomial:
    """The fermionic formula M(B, lambda; q)."""
    if t.family == Family.A2EVEN_DAG:
        from .virtual_kleber import m_polynomial_via_virtual
        return m_polynomial_via_virtual(t, L, lam)
    total = QPolynomial()
    for nu in sorted(configurations(t, L, lam), key=lambda c: c.partitions):
        total = total + term_for(t, L, nu)
    if not total.is_integral():
        logger.warning("non-integral exponent in M for %s %s at %s: %s", t, L, lam, total)
    return total


@dataclass(frozen=True)
class RiggedConfiguration:
    """A configuration with riggings J^(a,i) inside the m_i^(a) x p_i^(a) boxes."""

    nu: Configuration
    riggings: Tuple[Tuple[Tuple[int, int], Tuple[int, ...]], ...]

    def rigging(self, a: int, i: int) -> Tuple[int, ...]:
        for key, part in self.riggings:
            if key == (a, i):
                return part
        return ()


def rc_cocharge(t: AffineType, rc: RiggedConfiguration) -> Fraction:
    """cc(nu, J) = cc(nu) + sum t_a^v |J^(a,i)|."""
    fd = fermionic_data(t)
    return cocharge(t, rc.nu) + sum(fd.t_dual_of(a) * sum(part) for (a, _), part in rc.riggings)


def riggings_for(nu: Configuration, vacancies: Dict[Tuple[int, int], int]) -> Iterator[RiggedConfiguration]:
    keys = sorted(vacancies)
    boxes = []
    for a, i in keys:
        p = vacancies[(a, i)]
        boxes.append([tuple(sorted(c, reverse=True))
                      for c in combinations_with_replacement(range(p + 1), nu.m(a, i))])
    for choice in product(*boxes):
        yield RiggedConfiguration(nu, tuple(zip(keys, choice)))


def enumerate_rigged(t: AffineType, L: TensorSpec, lam: Weight,
                     nus: Optional[Sequence[Configuration]] = None) -> List[RiggedConfiguration]:
    if nus is None:
        nus = sorted(configurations(t, L, lam), key=lambda c: c.partitions)
    result = []
    for nu in nus:
        result.extend(riggings_for(nu, vacancy_table(t, L, nu)))
    return result


def rigged_generating_function(t: AffineType, rcs: Sequence[RiggedConfiguration]) -> QPolynomial:
    total = QPolynomial()
    for rc in rcs:
        total = total + QPolynomial.monomial(rc_cocharge(t, rc))
    return total
