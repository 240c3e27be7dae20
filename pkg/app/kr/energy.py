"""Combinatorial R-matrices, local energies, intrinsic energies and one-dimensional sums."""
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from .crystals import (
    DEFAULT_GRAPH_CAP,
    Crystal,
    Element,
    TensorCrystal,
    all_elements,
    level,
    restricted_paths,
)
from .errors import ConjectureViolation, CrystalModelError
from .qpoly import QPolynomial
from .root_data import Weight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RMap:
    """R: B2 (x) B1 -> B1 (x) B2 and the local energy H.

    H is stored on the domain B2 (x) B1, normalized by H(u (x) u) = 0.
    """

    left: Crystal
    right: Crystal
    table: Dict[Tuple[Element, Element], Tuple[Element, Element]]
    energy: Dict[Tuple[Element, Element], int]

    def __call__(self, b: Tuple[Element, Element]) -> Tuple[Element, Element]:
        return self.table[b]

    def H(self, b: Tuple[Element, Element]) -> int:
        return self.energy[b]

    def __hash__(self) -> int:
        return hash((self.left, self.right))

    def __eq__(self, other) -> bool:
        return isinstance(other, RMap) and (self.left, self.right) == (other.left, other.right)


def _zero_acts_left(crystal: TensorCrystal, b) -> bool:
    left, right = crystal.factors
    return left.epsilon(b[0], 0) > right.phi(b[1], 0)


def _energy_step(domain: TensorCrystal, codomain: TensorCrystal, x, y) -> int:
    """H(e_0 x) - H(x) for x in B2 (x) B1 with R(x) = y."""
    left_x = _zero_acts_left(domain, x)
    left_y = _zero_acts_left(codomain, y)
    if left_x and left_y:
        return -1
    if not left_x and not left_y:
        return 1
    return 0


@lru_cache(maxsize=None)
def compute_R_H(left: Crystal, right: Crystal, cap: int = DEFAULT_GRAPH_CAP) -> RMap:
    """R and H on left (x) right by breadth-first search from u (x) u.

    Every arc of the domain is matched in the codomain; any mismatch or
    inconsistent energy on a cycle is a modelling error.
    """
    domain = TensorCrystal((left, right))
    codomain = TensorCrystal((right, left))
    start = domain.highest()
    table = {start: codomain.highest()}
    energy = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        y = table[x]
        for i in domain.index_set:
            for raising in (True, False):
                op_x = domain.e(x, i) if raising else domain.f(x, i)
                op_y = codomain.e(y, i) if raising else codomain.f(y, i)
                if (op_x is None) != (op_y is None):
                    raise CrystalModelError(
                        f"R does not commute with {'e' if raising else 'f'}_{i} at {domain.label(x)}")
                if op_x is None:
                    continue
                if i != 0:
                    h = energy[x]
                elif raising:
                    h = energy[x] + _energy_step(domain, codomain, x, y)
                else:
                    h = energy[x] - _energy_step(domain, codomain, op_x, op_y)
                if op_x in table:
                    if table[op_x] != op_y:
                        raise CrystalModelError(f"R is not well defined at {domain.label(op_x)}")
                    if energy[op_x] != h:
                        raise CrystalModelError(f"local energy is inconsistent at {domain.label(op_x)}")
                    continue
                table[op_x] = op_y
                energy[op_x] = h
                queue.append(op_x)
                if len(table) > cap:
                    raise CrystalModelError(f"R search exceeded {cap} elements")
    expected = len(all_elements(left, cap)) * len(all_elements(right, cap))
    if len(table) != expected:
        raise CrystalModelError(
            f"{domain} is not connected: reached {len(table)} of {expected} elements")
    logger.debug("R and H for %s: %d elements", domain, len(table))
    return RMap(left=left, right=right, table=table, energy=energy)


@lru_cache(maxsize=None)
def find_bnatural(crystal: Crystal) -> Element:
    """The unique b with phi(b) = lev(B) Lambda_0."""
    lev = level(crystal)
    candidates = [b for b in all_elements(crystal)
                  if crystal.phi(b, 0) == lev
                  and all(crystal.phi(b, i) == 0 for i in crystal.classical_index_set)]
    if len(candidates) != 1:
        raise ConjectureViolation(
            f"{crystal} has {len(candidates)} candidates for b natural at level {lev}",
            {"crystal": str(crystal), "level": lev,
             "candidates": [crystal.label(b) for b in candidates]})
    return candidates[0]


@lru_cache(maxsize=None)
def _site_table(crystal: Crystal) -> Dict[Element, int]:
    rmap = compute_R_H(crystal, crystal)
    natural = find_bnatural(crystal)
    base = rmap.H((crystal.highest(), natural))
    return {b: rmap.H((b, natural)) - base for b in all_elements(crystal)}


def intrinsic_D_site(crystal: Crystal) -> Callable[[Element], int]:
    """D_B(b) = H(b (x) b_nat) - H(u(B) (x) b_nat) for a single KR crystal."""
    table = _site_table(crystal)
    return table.__getitem__


State = List[Tuple[Crystal, Element]]


def swap_factors(state: State, k: int) -> State:
    """R_k: act on the k-th and (k+1)-st factors counted from the right."""
    pos = len(state) - k - 1
    (c_left, b_left), (c_right, b_right) = state[pos], state[pos + 1]
    new_left, new_right = compute_R_H(c_left, c_right)((b_left, b_right))
    return state[:pos] + [(c_right, new_left), (c_left, new_right)] + state[pos + 2:]


def _local(state: State, k: int) -> int:
    pos = len(state) - k - 1
    (c_left, b_left), (c_right, b_right) = state[pos], state[pos + 1]
    return compute_R_H(c_left, c_right).H((b_left, b_right))


def energy_E(factors: Sequence[Crystal], b: Sequence[Element]) -> int:
    """E_B = sum_{i<j} H_i R_{i+1} ... R_{j-1}."""
    length = len(factors)
    start = list(zip(factors, b))
    total = 0
    for j in range(2, length + 1):
        for i in range(1, j):
            state = start
            for k in range(j - 1, i, -1):
                state = swap_factors(state, k)
            total += _local(state, i)
    return total


def _D_prime(factors: Sequence[Crystal], b: Sequence[Element]) -> int:
    total = energy_E(factors, b)
    start = list(zip(factors, b))
    for j in range(1, len(factors) + 1):
        state = start
        for k in range(j - 1, 0, -1):
            state = swap_factors(state, k)
        crystal, element = state[-1]
        total += intrinsic_D_site(crystal)(element)
    return total


def intrinsic_D(factors: Sequence[Crystal]) -> Callable[[Sequence[Element]], int]:
    """D_B on B = B_L (x) ... (x) B_1, normalized to 0 at u(B)."""
    factors = tuple(factors)
    offset = _D_prime(factors, [factor.highest() for factor in factors])

    def D(b: Sequence[Element]) -> int:
        return _D_prime(factors, b) - offset

    return D


def x_polynomial(factors: Sequence[Crystal], lam: Weight,
                 cap: int = DEFAULT_GRAPH_CAP) -> QPolynomial:
    """X(B, lambda; q) = sum over P(B, lambda) of q^{D_B(b)}."""
    tensor = TensorCrystal(tuple(factors))
    D = intrinsic_D(tensor.factors)
    total = QPolynomial()
    for b in restricted_paths(tensor, lam, cap):
        total = total + QPolynomial.monomial(D(b))
    return total


def x_polynomials(factors: Sequence[Crystal], cap: int = DEFAULT_GRAPH_CAP) -> Dict[Weight, QPolynomial]:
    """X(B, lambda; q) for every lambda with P(B, lambda) nonempty, in one pass over B."""
    tensor = TensorCrystal(tuple(factors))
    D = intrinsic_D(tensor.factors)
    result: Dict[Weight, QPolynomial] = {}
    for b in all_elements(tensor, cap):
        if tensor.is_classical_highest(b):
            lam = tensor.weight(b)
            result[lam] = result.get(lam, QPolynomial()) + QPolynomial.monomial(D(b))
    return result
