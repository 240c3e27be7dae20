"""Virtual crystals V^{1,s} inside simply-laced ambient crystals, and the virtual one-dimensional sum.

For C_n^(1), A_2n^(2), A_2n^(2)dag and D_n+1^(2) the ambient crystal is
B_Y^{2n-1,s} (x) B_Y^{1,s} of Y = A_2n-1^(1); its elements are pairs
(ydual, y) of letter counts, ydual[j-1] counting the letter j^vee.
For B_n^(1) and A_2n-1^(2) it is the row B_Y^{1, gamma_1 s} of Y = D_n+1^(1).
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Sequence, Set, Tuple

from .crystals import (
    DEFAULT_GRAPH_CAP,
    Crystal,
    DualCrystal,
    RowCrystal,
    TensorCrystal,
    all_elements,
    kr_crystal,
)
from .energy import compute_R_H, intrinsic_D
from .errors import (
    ConjectureViolation,
    CrystalModelError,
    GraphCapExceeded,
    NotVirtualError,
    UnsupportedTypeError,
)
from .qpoly import QPolynomial
from .root_data import AffineType, Family, Weight
from .virtual_kleber import EmbeddingData, embedding, psi_weight

logger = logging.getLogger(__name__)

_A_CHAIN = (Family.C1, Family.A2EVEN, Family.A2EVEN_DAG, Family.D2)

Counts = Tuple[int, ...]


@dataclass(frozen=True)
class VirtualKR:
    """The pair (V^{1,s}, V-hat^{1,s}) for a nonexceptional, non simply-laced X."""

    x_type: AffineType
    s: int

    def __post_init__(self):
        if self.x_type.is_simply_laced_untwisted:
            raise UnsupportedTypeError(f"{self.x_type} is simply-laced and needs no virtual crystal")
        if self.x_type.family not in _A_CHAIN + (Family.B1, Family.A2ODD):
            raise UnsupportedTypeError(f"no virtual row crystal for {self.x_type}")

    @property
    def emb(self) -> EmbeddingData:
        return embedding(self.x_type)

    @property
    def y_type(self) -> AffineType:
        return self.emb.y_type

    @property
    def is_a_chain(self) -> bool:
        return self.x_type.family in _A_CHAIN

    @property
    def y_factors(self) -> Tuple[Crystal, ...]:
        y = self.y_type
        if self.is_a_chain:
            return DualCrystal(kr_crystal(y, 1, self.s)), kr_crystal(y, 1, self.s)
        return (kr_crystal(y, 1, self.emb.gamma[1] * self.s),)

    @property
    def ambient(self) -> Crystal:
        factors = self.y_factors
        return TensorCrystal(factors) if len(factors) > 1 else factors[0]

    def highest(self):
        return self.ambient.highest()

    def __str__(self) -> str:
        return f"V^(1,{self.s}) of {self.x_type} in {self.y_type}"


def _repeat(op: Callable, emb: EmbeddingData, v, i: int):
    for j in emb.iota(i):
        for _ in range(emb.gamma[i]):
            if v is None:
                return None
            v = op(v, j)
    return v


def vhat_e(crystal: Crystal, emb: EmbeddingData, v, i: int):
    """e-hat_i = prod_{j in iota(i)} e_j^{gamma_i}."""
    return _repeat(crystal.e, emb, v, i)


def vhat_f(crystal: Crystal, emb: EmbeddingData, v, i: int):
    return _repeat(crystal.f, emb, v, i)


def generate_V(vkr: VirtualKR, cap: int = DEFAULT_GRAPH_CAP) -> Set:
    """Closure of u(V-hat) under the virtual operators for i in I^X."""
    crystal, emb = vkr.ambient, vkr.emb
    start = crystal.highest()
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in vkr.x_type.nodes:
            for w in (vhat_e(crystal, emb, v, i), vhat_f(crystal, emb, v, i)):
                if w is not None and w not in seen:
                    seen.add(w)
                    queue.append(w)
                    if len(seen) > cap:
                        raise GraphCapExceeded(cap, len(seen))
    logger.debug("generated %s: %d elements", vkr, len(seen))
    return seen


def typeA_row_R(row: Counts, dual_counts: Counts) -> Tuple[Counts, Counts]:
    """R: B^{1,s} (x) B^{2n-1,s} -> B^{2n-1,s} (x) B^{1,s} of A_2n-1^(1) on letter counts."""
    y_type = AffineType(Family.A1, len(row) - 1)
    row_crystal = kr_crystal(y_type, 1, sum(row))
    rmap = compute_R_H(row_crystal, DualCrystal(row_crystal))
    return rmap((tuple(row), tuple(dual_counts)))


def star(counts: Counts) -> Counts:
    """Letter i -> 2n+1-i with the word reversed; on counts this reverses the vector."""
    return tuple(reversed(counts))


def dual_element(v: Tuple[Counts, Counts]) -> Tuple[Counts, Counts]:
    """(b1 (x) b2)^vee = b2^vee (x) b1^vee: column-dual counts become row counts and back."""
    ydual, y = v
    return y, ydual


def star_dual(v: Tuple[Counts, Counts]) -> Tuple[Counts, Counts]:
    """b^{vee*} in B^{1,s} (x) B^{2n-1,s}, as (row counts, dual counts)."""
    dual_of_row, row_of_dual = dual_element(v)
    return star(row_of_dual), star(dual_of_row)


def is_self_dual(v: Tuple[Counts, Counts]) -> bool:
    """b^{vee*} = R(b), i.e. R applied to b^{vee*} gives back b."""
    row, dual_counts = star_dual(v)
    return typeA_row_R(row, dual_counts) == tuple(v)


def self_dual_by_counts(v: Tuple[Counts, Counts]) -> bool:
    """The equivalent count conditions, with y_{2n+1} = y_1."""
    ydual, y = v
    top = len(y)
    for i in range(1, top + 1):
        nxt = i % top
        carry = min(y[nxt], ydual[nxt])
        if y[top - i] != ydual[i - 1] - min(y[i - 1], ydual[i - 1]) + carry:
            return False
        if ydual[top - i] != y[i - 1] - min(y[i - 1], ydual[i - 1]) + carry:
            return False
    return True


def epsilon_zero_formula(v: Tuple[Counts, Counts]) -> int:
    """eps_0 of a self-dual element: 2 y_1 - min(y_1, y_1^vee)."""
    ydual, y = v
    return 2 * y[0] - min(y[0], ydual[0])


def membership(x: AffineType, v) -> bool:
    """The explicit description of V^{1,s} inside V-hat^{1,s}."""
    n = x.n
    if x.family in _A_CHAIN:
        ydual, y = v
        if not is_self_dual(v):
            return False
        if x.family in (Family.C1, Family.A2EVEN_DAG) and min(y[0], ydual[0]) % 2:
            return False
        if x.family in (Family.C1, Family.A2EVEN) and min(y[n], ydual[n]) % 2:
            return False
        return True
    size = 2 * (n + 1)
    if v[n] or v[size - n - 1]:
        return False
    if x.family == Family.A2ODD:
        return True
    if any(v[i - 1] % 2 or v[size - i] % 2 for i in range(1, n)):
        return False
    return (v[n - 1] + v[size - n]) % 2 == 0


def membership_set(vkr: VirtualKR, cap: int = DEFAULT_GRAPH_CAP) -> Set:
    return {v for v in all_elements(vkr.ambient, cap) if membership(vkr.x_type, v)}


def _a_chain_image(x: AffineType, source: RowCrystal, b: Counts, s: int) -> Tuple[Counts, Counts]:
    """Letter counts (ydual, y) of emb(b): the free pairs 1^vee (x) 1 commute with everything,
    the lower half follows from the x-counts and the upper half from self-duality."""
    n, top = x.n, 2 * x.n
    xs = [b[source.x(i)] for i in range(1, n + 1)]
    xbars = [b[source.xbar(i)] for i in range(1, n + 1)]
    mins = [min(a, c) for a, c in zip(xs, xbars)]
    y, ydual = [0] * top, [0] * top
    free = s - sum(b)
    y[0], ydual[0] = xs[0] - mins[0] + free, xbars[0] - mins[0] + free
    for i in range(1, n):
        y[i] = xs[i] - mins[i] + mins[i - 1]
        ydual[i] = xbars[i] - mins[i] + mins[i - 1]
    for i in range(1, n):
        carry = min(y[i], ydual[i])
        low = min(y[i - 1], ydual[i - 1])
        y[top - i] = ydual[i - 1] - low + carry
        ydual[top - i] = y[i - 1] - low + carry
    low = min(y[n - 1], ydual[n - 1])
    middle = s - sum(y) - (ydual[n - 1] - low)
    y[n] = ydual[n - 1] - low + middle
    ydual[n] = y[n - 1] - low + middle
    if middle < 0 or sum(ydual) != s:
        raise CrystalModelError(f"{source.label(b)} has no self-dual image in V^(1,{s}) of {x}")
    return tuple(ydual), tuple(y)


def embed_element(x: AffineType, b: Counts, s: int):
    """The X-crystal isomorphism B^{1,s} -> V^{1,s} on a count vector of B^{1,s}."""
    n = x.n
    source = kr_crystal(x, 1, s)
    if not isinstance(source, RowCrystal) or not source.is_element(b):
        raise NotVirtualError(f"{b} is not an element of {source}")
    if x.family in _A_CHAIN:
        return _a_chain_image(x, source, b, s)
    size = 2 * (n + 1)
    image = [0] * size
    factor = 2 if x.family == Family.B1 else 1
    for i in range(1, n + 1):
        image[i - 1] = factor * b[source.x(i)]
        image[size - i] = factor * b[source.xbar(i)]
    if source.kind == "B":
        image[n - 1] += b[source.circ]
        image[size - n] += b[source.circ]
    return tuple(image)


def embedding_map(vkr: VirtualKR, cap: int = DEFAULT_GRAPH_CAP) -> Dict:
    source = kr_crystal(vkr.x_type, 1, vkr.s)
    return {b: embed_element(vkr.x_type, b, vkr.s) for b in all_elements(source, cap)}


def embedding_commutes(vkr: VirtualKR, cap: int = DEFAULT_GRAPH_CAP) -> bool:
    """emb is injective and e_i, f_i correspond to e-hat_i, f-hat_i for all i in I^X."""
    source = kr_crystal(vkr.x_type, 1, vkr.s)
    mapping = embedding_map(vkr, cap)
    if len(set(mapping.values())) != len(mapping):
        return False
    crystal, emb = vkr.ambient, vkr.emb
    for b, v in mapping.items():
        for i in vkr.x_type.nodes:
            for op, vop in ((source.e, vhat_e), (source.f, vhat_f)):
                image = op(b, i)
                expected = None if image is None else mapping[image]
                if vop(crystal, emb, v, i) != expected:
                    return False
    return True


def is_aligned(vkr: VirtualKR, v) -> bool:
    crystal, emb = vkr.ambient, vkr.emb
    for i in vkr.x_type.nodes:
        for stat in (crystal.epsilon, crystal.phi):
            values = {stat(v, j) for j in emb.iota(i)}
            if len(values) != 1 or values.pop() % emb.gamma[i]:
                return False
    return True


def virtual_epsilon(vkr: VirtualKR, v, i: int) -> int:
    """eps_i^X(v) = eps_j^Y(v) / gamma_i on aligned elements."""
    emb = vkr.emb
    return vkr.ambient.epsilon(v, emb.iota(i)[0]) // emb.gamma[i]


@lru_cache(maxsize=None)
def virtual_set(x: AffineType, s: int) -> frozenset:
    return frozenset(generate_V(VirtualKR(x, s)))


def _flat(vkrs: Sequence[VirtualKR], parts: Sequence) -> Tuple:
    flat = []
    for vkr, part in zip(vkrs, parts):
        if len(vkr.y_factors) > 1:
            flat.extend(part)
        else:
            flat.append(part)
    return tuple(flat)


def _virtual_factors(x: AffineType, factors: Sequence[Tuple[int, int]]) -> List[VirtualKR]:
    for r, _ in factors:
        if r != 1:
            raise UnsupportedTypeError(f"virtual crystals are available for B^(1,s) only, got r={r}")
    return [VirtualKR(x, s) for _, s in factors]


def virtual_H(x: AffineType, s_left: int, s_right: int) -> Callable:
    """H^v = H_Y / gamma_0 on V-hat^{1,s_left} (x) V-hat^{1,s_right}."""
    left, right = VirtualKR(x, s_left), VirtualKR(x, s_right)
    rmap = compute_R_H(left.ambient, right.ambient)
    gamma0 = left.emb.gamma[0]

    def H(v) -> Fraction:
        return Fraction(rmap.H(v), gamma0)

    return H


def virtual_R_closed(x: AffineType, s_left: int, s_right: int) -> bool:
    """R-hat maps V (x) V' into V' (x) V."""
    left, right = VirtualKR(x, s_left), VirtualKR(x, s_right)
    rmap = compute_R_H(left.ambient, right.ambient)
    v_left, v_right = virtual_set(x, s_left), virtual_set(x, s_right)
    for a in v_left:
        for b in v_right:
            image_left, image_right = rmap((a, b))
            if image_left not in v_right or image_right not in v_left:
                return False
    return True


def virtual_D(x: AffineType, factors: Sequence[Tuple[int, int]]) -> Callable:
    """D^v = D_{V-hat} / gamma_0, with D_{V-hat} computed on the flattened Y-tensor."""
    vkrs = _virtual_factors(x, factors)
    y_factors = tuple(c for vkr in vkrs for c in vkr.y_factors)
    D_hat = intrinsic_D(y_factors)
    gamma0 = embedding(x).gamma[0]

    def D(parts: Sequence) -> Fraction:
        return Fraction(D_hat(_flat(vkrs, parts)), gamma0)

    return D


def virtual_paths(x: AffineType, factors: Sequence[Tuple[int, int]], lam: Weight) -> List[Tuple]:
    """P(V, lambda): weight Psi(lambda) and every classical e-hat_i undefined."""
    vkrs = _virtual_factors(x, factors)
    y_factors = tuple(c for vkr in vkrs for c in vkr.y_factors)
    tensor = TensorCrystal(y_factors)
    emb = embedding(x)
    target = psi_weight(x, lam)
    pools = [sorted(virtual_set(x, vkr.s)) for vkr in vkrs]
    paths = []
    for parts in product(*pools):
        flat = _flat(vkrs, parts)
        if tensor.weight(flat) != target:
            continue
        if all(vhat_e(tensor, emb, flat, i) is None for i in x.classical_nodes):
            paths.append(parts)
    return paths


def xv_polynomial(x: AffineType, factors: Sequence[Tuple[int, int]], lam: Weight) -> QPolynomial:
    """X^v(V, lambda) = sum over P(V, lambda) of q^{D^v}."""
    D = virtual_D(x, factors)
    total = QPolynomial()
    for parts in virtual_paths(x, factors, lam):
        value = D(parts)
        if value.denominator != 1:
            raise ConjectureViolation(
                f"non-integral virtual energy {value} for {x}",
                {"type": x.label, "factors": [list(f) for f in factors], "value": str(value)})
        total = total + QPolynomial.monomial(value)
    return total
