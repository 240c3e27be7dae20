"""Kleber's tree algorithm for simply-laced untwisted types.

Every node stores the sum S of the edge labels on its path from the root, so
its weight after all additions is top(B) - A S, where top(B) = sum i L_i^(a) Lambda_a.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .errors import UnsupportedTypeError
from .fermionic import brute_force_configs, top_weight
from .root_data import AffineType, Weight, classical_cartan_inverse, dynkin_data
from .tensor_spec import Configuration, TensorSpec

logger = logging.getLogger(__name__)

__all__ = [
    "KleberNode",
    "KleberTree",
    "kleber_tree",
    "path_to_config",
    "configs",
    "brute_force_configs",
    "path_vacancies",
]

Vector = Tuple[int, ...]

# (parent, child weight at the current iteration, edge label, depth) -> admit?
AdmitHook = Callable[["KleberNode", Vector, Vector, int], bool]


@dataclass
class KleberNode:
    node_id: int
    depth: int
    weight: Weight
    path_sum: Vector
    edge: Optional[Vector] = None
    parent: Optional[int] = None
    children: List[int] = field(default_factory=list)
    selected: bool = True
    superlattice: bool = False


@dataclass
class KleberTree:
    """Rooted tree of dominant weights. Not modified once returned."""

    y_type: AffineType
    spec: TensorSpec
    target: Optional[Weight]
    nodes: List[KleberNode]
    iterations: int = 0

    @property
    def root(self) -> KleberNode:
        return self.nodes[0]

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, node_id: int) -> KleberNode:
        return self.nodes[node_id]

    def path(self, node: KleberNode) -> List[KleberNode]:
        chain = [node]
        while chain[-1].parent is not None:
            chain.append(self.nodes[chain[-1].parent])
        return list(reversed(chain))

    def nodes_of_weight(self, lam: Weight) -> List[KleberNode]:
        return [node for node in self.nodes if node.weight == lam]

    def walk(self) -> List[KleberNode]:
        """Depth-first preorder with children in stored order."""
        order: List[KleberNode] = []
        stack = [0]
        while stack:
            node = self.nodes[stack.pop()]
            order.append(node)
            stack.extend(reversed(node.children))
        return order


def _matvec(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> Vector:
    return tuple(sum(row[b] * vector[b] for b in range(len(vector))) for row in matrix)


def _root_coords(inverse, weight: Sequence[int]) -> Tuple[Fraction, ...]:
    return tuple(sum((row[b] * weight[b] for b in range(len(weight))), Fraction(0)) for row in inverse)


def _tail(L: TensorSpec, n: int, ell: int, offset: bool) -> Vector:
    """sum_{i >= ell} L_i^(a), or sum_{j > ell} (j - ell) L_j^(a) when offset is set."""
    coeffs = [0] * n
    for r, s in L.factors:
        if offset:
            if s > ell:
                coeffs[r - 1] += s - ell
        elif s >= ell:
            coeffs[r - 1] += 1
    return tuple(coeffs)


def grow_tree(y: AffineType, L: TensorSpec, target: Optional[Weight] = None,
              admit: Optional[AdmitHook] = None) -> KleberTree:
    """Run the Kleber loop on any simply-laced Y, with optional extra admission rule."""
    cartan = dynkin_data(y).classical_cartan
    inverse = classical_cartan_inverse(y)
    n = y.n
    top = top_weight(y, L).coeffs
    last = L.max_width

    root = KleberNode(node_id=0, depth=0, weight=Weight(top), path_sum=(0,) * n)
    nodes = [root]
    frontier = [root]
    added = (0,) * n
    ell = 0
    while True:
        ell += 1
        step = _tail(L, n, ell, offset=False)
        added = tuple(p + q for p, q in zip(added, step))
        remaining = _tail(L, n, ell, offset=True)
        new_frontier: List[KleberNode] = []
        for x in frontier:
            mu = tuple(added[a] - v for a, v in enumerate(_matvec(cartan, x.path_sum)))
            if x.edge is None:
                bound = tuple(floor(c) for c in _root_coords(inverse, mu))
            else:
                bound = x.edge
            for d in product(*(range(b + 1) for b in bound)):
                if not any(d):
                    continue
                tau = tuple(mu[a] - v for a, v in enumerate(_matvec(cartan, d)))
                if any(c < 0 for c in tau):
                    continue
                if target is not None and not _reachable(inverse, tau, remaining, target.coeffs, d):
                    continue
                if admit is not None and not admit(x, tau, d, ell):
                    continue
                path_sum = tuple(p + q for p, q in zip(x.path_sum, d))
                child = KleberNode(
                    node_id=len(nodes),
                    depth=ell,
                    weight=Weight(tuple(top[a] - v for a, v in enumerate(_matvec(cartan, path_sum)))),
                    path_sum=path_sum,
                    edge=d,
                    parent=x.node_id,
                )
                nodes.append(child)
                x.children.append(child.node_id)
                new_frontier.append(child)
        frontier = new_frontier
        if ell >= last and not new_frontier:
            break
    logger.debug("kleber tree for %s %s: %d nodes after %d iterations", y, L, len(nodes), ell)
    return KleberTree(y_type=y, spec=L, target=target, nodes=nodes, iterations=ell)


def _reachable(inverse, tau: Vector, remaining: Vector, target: Sequence[int], d: Vector) -> bool:
    # tau' = tau + sum_a Lambda_a sum_{j > ell} (j - ell) L_j^(a)
    tau_prime = tuple(t + r for t, r in zip(tau, remaining))
    diff = _root_coords(inverse, [tp - lam for tp, lam in zip(tau_prime, target)])
    if any(c < 0 or c.denominator != 1 for c in diff):
        return False
    return not any(c > 0 and d[a] == 0 for a, c in enumerate(diff))


def _require_simply_laced(y: AffineType) -> None:
    if not y.is_simply_laced_untwisted:
        raise UnsupportedTypeError(f"{y} is not simply-laced untwisted; use the virtual Kleber tree")


def kleber_tree(y: AffineType, L: TensorSpec, target: Optional[Weight] = None) -> KleberTree:
    """The tree T(B); pruned towards `target` when it is given."""
    _require_simply_laced(y)
    return grow_tree(y, L, target)


def path_to_config(tree: KleberTree, node: KleberNode) -> Tuple[Weight, Configuration]:
    """m_i^(a) = (d_i - d_{i+1})_a along the path, with d_i the edge into depth i."""
    n = tree.y_type.n
    edges = [step.edge for step in tree.path(node)[1:]]
    m: Dict[Tuple[int, int], int] = {}
    for i, d in enumerate(edges, start=1):
        following = edges[i] if i < len(edges) else (0,) * n
        for a in range(n):
            count = d[a] - following[a]
            if count < 0:
                raise ValueError(f"edge labels increase along the path to node {node.node_id}")
            if count:
                m[(a + 1, i)] = count
    return node.weight, Configuration.from_multiplicities(n, m)


def path_vacancies(tree: KleberTree, node: KleberNode, reading: str = "weighted") -> Dict[Tuple[int, int], int]:
    """Vacancy numbers read off the path weights lambda^(i).

    "weighted": p_i^(a) = (lambda^(i)|alpha_a) - sum_{k>i} (k-i) L_k^(a), which agrees with the
    defining formula. "printed": p_i^(a) = (lambda^(i)|alpha_a) - sum_{k>i} L_k^(a).
    """
    if reading not in ("weighted", "printed"):
        raise ValueError(f"unknown reading {reading!r}")
    path = tree.path(node)
    _, nu = path_to_config(tree, node)
    result = {}
    for a in range(1, tree.y_type.n + 1):
        widths = tree.spec.node_widths(a)
        for i in nu.row_lengths(a):
            weight_i = path[i].weight if i < len(path) else node.weight
            if reading == "weighted":
                tail = sum(k - i for k in widths if k > i)
            else:
                tail = sum(1 for k in widths if k > i)
            result[(a, i)] = weight_i.coeffs[a - 1] - tail
    return result


def configs(y: AffineType, L: TensorSpec, lam: Weight) -> Set[Configuration]:
    """C(B, lambda) from the pruned tree."""
    tree = kleber_tree(y, L, lam)
    return {path_to_config(tree, node)[1] for node in tree.nodes_of_weight(lam)}
