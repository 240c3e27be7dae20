"""Crystals B^{1,s} of nonexceptional affine types, type A column duals and tensor products.

Row elements are count vectors over the alphabet of the classical crystal:

    type A_m      x_1, ..., x_{m+1}
    type B_n      x_1, ..., x_n, x_o, xbar_n, ..., xbar_1
    type C_n, D_n x_1, ..., x_n, xbar_n, ..., xbar_1

A tensor element is the tuple of its factor elements, listed left to right.
e_i acts on b1 (x) b2 through b1 when eps_i(b1) > phi_i(b2), f_i through b1 when
eps_i(b1) >= phi_i(b2).
"""
import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import CrystalModelError, GraphCapExceeded, UnsupportedTypeError
from .root_data import AffineType, Family, Weight, dynkin_data

logger = logging.getLogger(__name__)

DEFAULT_GRAPH_CAP = 1_000_000

Element = Hashable
Counts = Tuple[int, ...]
Branch = Tuple[Callable[[Counts], bool], Dict[int, int]]

# family -> (classical kind, e_0 rule, admissible word lengths)
_ROW_MODELS = {
    Family.A1: ("A", "cyclic", "fixed"),
    Family.B1: ("B", "x2", "fixed"),
    Family.D1: ("D", "x2", "fixed"),
    Family.A2ODD: ("C", "x2", "fixed"),
    Family.A2EVEN: ("C", "x1", "any"),
    Family.D2: ("B", "x1", "any"),
    Family.C1: ("C", "2x1", "parity"),
    Family.A2EVEN_DAG: ("B", "2x1", "parity"),
}


class Crystal(ABC):
    """A finite affine crystal with partial operators e_i, f_i for i in I."""

    affine_type: AffineType

    @property
    def index_set(self) -> range:
        return self.affine_type.nodes

    @property
    def classical_index_set(self) -> range:
        return self.affine_type.classical_nodes

    @abstractmethod
    def highest(self) -> Element:
        """u(B), the classical highest weight element of extremal weight."""

    @abstractmethod
    def e(self, b: Element, i: int) -> Optional[Element]:
        pass

    @abstractmethod
    def f(self, b: Element, i: int) -> Optional[Element]:
        pass

    @abstractmethod
    def is_element(self, b: Element) -> bool:
        pass

    @abstractmethod
    def label(self, b: Element) -> str:
        pass

    def epsilon(self, b: Element, i: int) -> int:
        k = 0
        while True:
            b = self.e(b, i)
            if b is None:
                return k
            k += 1

    def phi(self, b: Element, i: int) -> int:
        k = 0
        while True:
            b = self.f(b, i)
            if b is None:
                return k
            k += 1

    def weight(self, b: Element) -> Weight:
        return Weight(tuple(self.phi(b, i) - self.epsilon(b, i) for i in self.classical_index_set))

    def is_classical_highest(self, b: Element) -> bool:
        return all(self.e(b, i) is None for i in self.classical_index_set)

    def lowest_classical(self) -> Element:
        """Descend from u(B) with classical f_i until every f_i is undefined."""
        b = self.highest()
        moved = True
        while moved:
            moved = False
            for i in self.classical_index_set:
                nxt = self.f(b, i)
                if nxt is not None:
                    b, moved = nxt, True
        return b


@dataclass(frozen=True)
class RowCrystal(Crystal):
    """B^{1,s} as weakly increasing words, stored as letter counts."""

    affine_type: AffineType
    s: int
    kind: str
    zero_rule: str
    lengths: str

    @property
    def rank(self) -> int:
        return self.affine_type.n

    @property
    def size(self) -> int:
        n = self.rank
        return {"A": n + 1, "B": 2 * n + 1}.get(self.kind, 2 * n)

    def x(self, i: int) -> int:
        """Index of the unbarred letter i."""
        return i - 1

    def xbar(self, i: int) -> int:
        return self.size - i

    @property
    def circ(self) -> int:
        return self.rank

    def highest(self) -> Counts:
        counts = [0] * self.size
        counts[0] = self.s
        return tuple(counts)

    def is_element(self, b: Counts) -> bool:
        if len(b) != self.size or any(c < 0 for c in b):
            return False
        total = sum(b)
        if self.lengths == "fixed" and total != self.s:
            return False
        if self.lengths == "any" and total > self.s:
            return False
        if self.lengths == "parity" and (total > self.s or (self.s - total) % 2):
            return False
        n = self.rank
        if self.kind == "B" and b[self.circ] > 1:
            return False
        if self.kind == "D" and b[self.x(n)] > 0 and b[self.xbar(n)] > 0:
            return False
        return True

    def _move(self, up: int, down: int) -> Dict[int, int]:
        return {up: 1, down: -1}

    def _branches(self, i: int) -> List[Branch]:
        n, x, xb = self.rank, self.x, self.xbar
        if self.kind == "A":
            if i == 0:
                return [(lambda b: True, self._move(x(n + 1), x(1)))]
            return [(lambda b: True, self._move(x(i), x(i + 1)))]
        if i == 0:
            return self._zero_branches()
        if self.kind == "B" and i == n:
            c = self.circ
            return [
                (lambda b: b[c] == 0, self._move(c, xb(n))),
                (lambda b: b[c] == 1, self._move(x(n), c)),
            ]
        if self.kind == "C" and i == n:
            return [(lambda b: True, self._move(x(n), xb(n)))]
        if self.kind == "D" and i == n - 1:
            return [
                (lambda b: b[x(n)] > 0, self._move(x(n - 1), x(n))),
                (lambda b: b[x(n)] == 0, self._move(xb(n), xb(n - 1))),
            ]
        if self.kind == "D" and i == n:
            return [
                (lambda b: b[xb(n)] > 0, self._move(x(n - 1), xb(n))),
                (lambda b: b[xb(n)] == 0, self._move(x(n), xb(n - 1))),
            ]
        return [
            (lambda b: b[x(i + 1)] > b[xb(i + 1)], self._move(x(i), x(i + 1))),
            (lambda b: b[x(i + 1)] <= b[xb(i + 1)], self._move(xb(i + 1), xb(i))),
        ]

    def _zero_branches(self) -> List[Branch]:
        x, xb = self.x, self.xbar
        if self.zero_rule == "x2":
            return [
                (lambda b: b[x(2)] > b[xb(2)], self._move(xb(1), x(2))),
                (lambda b: b[x(2)] <= b[xb(2)], self._move(xb(2), x(1))),
            ]
        if self.zero_rule == "x1":
            return [
                (lambda b: b[x(1)] > b[xb(1)], {x(1): -1}),
                (lambda b: b[x(1)] <= b[xb(1)], {xb(1): 1}),
            ]
        return [
            (lambda b: b[x(1)] >= b[xb(1)] + 2, {x(1): -2}),
            (lambda b: b[x(1)] == b[xb(1)] + 1, self._move(xb(1), x(1))),
            (lambda b: b[x(1)] <= b[xb(1)], {xb(1): 2}),
        ]

    @staticmethod
    def _shift(b: Counts, delta: Dict[int, int], sign: int) -> Counts:
        counts = list(b)
        for pos, change in delta.items():
            counts[pos] += sign * change
        return tuple(counts)

    def e(self, b: Counts, i: int) -> Optional[Counts]:
        for condition, delta in self._branches(i):
            if condition(b):
                image = self._shift(b, delta, 1)
                return image if self.is_element(image) else None
        return None

    def f(self, b: Counts, i: int) -> Optional[Counts]:
        # f_i is the partial inverse of e_i: undo each branch and keep the
        # preimage that would have taken that branch
        for condition, delta in self._branches(i):
            source = self._shift(b, delta, -1)
            if self.is_element(source) and condition(source):
                return source
        return None

    def letters(self) -> List[str]:
        n = self.rank
        if self.kind == "A":
            return [str(i) for i in range(1, n + 2)]
        middle = ["0"] if self.kind == "B" else []
        return [str(i) for i in range(1, n + 1)] + middle + [f"-{i}" for i in range(n, 0, -1)]

    def word(self, b: Counts) -> List[str]:
        return [letter for letter, count in zip(self.letters(), b) for _ in range(count)]

    def label(self, b: Counts) -> str:
        return " ".join(self.word(b)) or "()"

    def __str__(self) -> str:
        return f"B^(1,{self.s}) of {self.affine_type}"


@dataclass(frozen=True)
class DualCrystal(Crystal):
    """B^vee: same underlying counts, arrows reversed."""

    base: Crystal

    @property
    def affine_type(self) -> AffineType:
        return self.base.affine_type

    def highest(self) -> Element:
        return self.base.lowest_classical()

    def e(self, b: Element, i: int) -> Optional[Element]:
        return self.base.f(b, i)

    def f(self, b: Element, i: int) -> Optional[Element]:
        return self.base.e(b, i)

    def epsilon(self, b: Element, i: int) -> int:
        return self.base.phi(b, i)

    def phi(self, b: Element, i: int) -> int:
        return self.base.epsilon(b, i)

    def is_element(self, b: Element) -> bool:
        return self.base.is_element(b)

    def label(self, b: Element) -> str:
        if isinstance(self.base, RowCrystal):
            return " ".join(f"{letter}v" for letter in reversed(self.base.word(b))) or "()"
        return f"({self.base.label(b)})v"

    def __str__(self) -> str:
        return f"({self.base})v"


@dataclass(frozen=True)
class TensorCrystal(Crystal):
    """Tensor product of crystals over one affine type, factors left to right."""

    factors: Tuple[Crystal, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a tensor product needs at least one factor")
        types = {factor.affine_type for factor in self.factors}
        if len(types) != 1:
            raise ValueError(f"tensor factors mix types {sorted(map(str, types))}")

    @property
    def affine_type(self) -> AffineType:
        return self.factors[0].affine_type

    def highest(self) -> Tuple:
        return tuple(factor.highest() for factor in self.factors)

    def is_element(self, b) -> bool:
        return len(b) == len(self.factors) and all(
            factor.is_element(part) for factor, part in zip(self.factors, b))

    def _signature(self, b, i: int) -> Tuple[List[int], List[int]]:
        """Unmatched minus and plus positions after cancelling +- pairs.

        The signature is read from the rightmost factor to the leftmost one.
        """
        minus: List[int] = []
        plus: List[int] = []
        for pos in range(len(self.factors) - 1, -1, -1):
            factor, part = self.factors[pos], b[pos]
            for _ in range(factor.epsilon(part, i)):
                if plus:
                    plus.pop()
                else:
                    minus.append(pos)
            plus.extend([pos] * factor.phi(part, i))
        return minus, plus

    def _act(self, b, pos: int, image) -> Optional[Tuple]:
        if image is None:
            return None
        return b[:pos] + (image,) + b[pos + 1:]

    def e(self, b, i: int) -> Optional[Tuple]:
        minus, _ = self._signature(b, i)
        if not minus:
            return None
        pos = minus[-1]
        return self._act(b, pos, self.factors[pos].e(b[pos], i))

    def f(self, b, i: int) -> Optional[Tuple]:
        _, plus = self._signature(b, i)
        if not plus:
            return None
        pos = plus[0]
        return self._act(b, pos, self.factors[pos].f(b[pos], i))

    def epsilon(self, b, i: int) -> int:
        return len(self._signature(b, i)[0])

    def phi(self, b, i: int) -> int:
        return len(self._signature(b, i)[1])

    def label(self, b) -> str:
        return " (x) ".join(factor.label(part) for factor, part in zip(self.factors, b))

    def __str__(self) -> str:
        return " (x) ".join(str(factor) for factor in self.factors)


def kr_crystal(t: AffineType, r: int, s: int) -> Crystal:
    """B^{r,s} for r = 1 in every nonexceptional type, and r = n in type A_n^(1)."""
    if s < 1:
        raise ValueError(f"width must be positive, got {s}")
    model = _ROW_MODELS.get(t.family)
    if model is None:
        raise UnsupportedTypeError(f"no crystal model for {t}")
    row = RowCrystal(t, s, *model)
    if r == 1:
        return row
    if t.family == Family.A1 and r == t.n:
        return DualCrystal(row)
    raise UnsupportedTypeError(f"B^({r},{s}) of {t} is outside the row and column-dual models")


def tensor_crystal(t: AffineType, factors: Iterable[Tuple[int, int]]) -> TensorCrystal:
    return TensorCrystal(tuple(kr_crystal(t, r, s) for r, s in factors))


def dual(crystal: Crystal) -> Crystal:
    """(B_L (x) ... (x) B_1)^vee = B_1^vee (x) ... (x) B_L^vee."""
    if isinstance(crystal, DualCrystal):
        return crystal.base
    if isinstance(crystal, TensorCrystal):
        return TensorCrystal(tuple(dual(factor) for factor in reversed(crystal.factors)))
    return DualCrystal(crystal)


def dual_element(crystal: Crystal, b: Element) -> Element:
    if isinstance(crystal, TensorCrystal):
        return tuple(dual_element(factor, part)
                     for factor, part in zip(reversed(crystal.factors), reversed(b)))
    return b


@dataclass
class CrystalGraph:
    """The crystal graph as a networkx MultiDiGraph with arcs b -> f_i(b) keyed by i."""

    crystal: Crystal
    graph: nx.MultiDiGraph
    highest: Element

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def elements(self) -> List[Element]:
        return sorted(self.graph.nodes)

    def arcs(self, i: Optional[int] = None) -> List[Tuple[Element, Element, int]]:
        return sorted((u, v, k) for u, v, k in self.graph.edges(keys=True) if i is None or k == i)


def generate_graph(crystal: Crystal, cap: int = DEFAULT_GRAPH_CAP,
                   indices: Optional[Sequence[int]] = None) -> CrystalGraph:
    """Closure of {u(B)} under e_i, f_i by breadth-first search."""
    indices = list(crystal.index_set if indices is None else indices)
    start = crystal.highest()
    graph = nx.MultiDiGraph()
    graph.add_node(start)
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for i in indices:
            lowered = crystal.f(b, i)
            if lowered is not None:
                if crystal.e(lowered, i) != b:
                    raise CrystalModelError(f"e_{i} f_{i} does not return {crystal.label(b)}")
                if lowered not in graph:
                    queue.append(lowered)
                graph.add_edge(b, lowered, key=i)
            raised = crystal.e(b, i)
            if raised is not None and raised not in graph:
                graph.add_node(raised)
                queue.append(raised)
            if graph.number_of_nodes() > cap:
                raise GraphCapExceeded(cap, graph.number_of_nodes())
    logger.debug("generated %s: %d elements", crystal, graph.number_of_nodes())
    return CrystalGraph(crystal=crystal, graph=graph, highest=start)


def all_elements(crystal: Crystal, cap: int = DEFAULT_GRAPH_CAP) -> List[Element]:
    """Every element; tensors are enumerated factorwise."""
    if isinstance(crystal, TensorCrystal):
        pools = [all_elements(factor, cap) for factor in crystal.factors]
        total = 1
        for pool in pools:
            total *= len(pool)
        if total > cap:
            raise GraphCapExceeded(cap, total)
        return [tuple(choice) for choice in product(*pools)]
    return generate_graph(crystal, cap).elements()


def restricted_paths(crystal: Crystal, lam: Weight, cap: int = DEFAULT_GRAPH_CAP) -> List[Element]:
    """P(B, lambda): classical highest weight elements of weight lambda."""
    return [b for b in all_elements(crystal, cap)
            if crystal.is_classical_highest(b) and crystal.weight(b) == lam]


def level(crystal: Crystal, cap: int = DEFAULT_GRAPH_CAP) -> int:
    """min over b of <c, eps(b)> = sum_i a_i^vee eps_i(b)."""
    a_dual = dynkin_data(crystal.affine_type).a_dual
    return min(sum(a_dual[i] * crystal.epsilon(b, i) for i in crystal.index_set)
               for b in all_elements(crystal, cap))


def classical_decomposition(crystal: Crystal, cap: int = DEFAULT_GRAPH_CAP) -> Dict[Weight, int]:
    """Highest weights of the classical components with their multiplicities."""
    result: Dict[Weight, int] = {}
    for b in all_elements(crystal, cap):
        if crystal.is_classical_highest(b):
            wt = crystal.weight(b)
            result[wt] = result.get(wt, 0) + 1
    return result
