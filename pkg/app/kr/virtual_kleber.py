"""Embeddings X -> Y, the virtual Kleber tree and the virtual rigged configuration bijection."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Set, Tuple

import networkx as nx

from .errors import ConjectureViolation, NotAnEmbeddingError, NotVirtualError, UnsupportedTypeError
from .fermionic import (
    RiggedConfiguration,
    brute_force_configs,
    cocharge,
    riggings_for,
    vacancy,
)
from .kleber import KleberNode, KleberTree, grow_tree, path_to_config
from .qpoly import QPolynomial, gaussian_binomial
from .root_data import AffineType, Family, Weight, dynkin_data
from .tensor_spec import Configuration, TensorSpec

logger = logging.getLogger(__name__)

_A_CHAIN = (Family.C1, Family.A2EVEN, Family.A2EVEN_DAG, Family.D2)
_D_TARGET = (Family.B1, Family.A2ODD)


@dataclass(frozen=True)
class EmbeddingData:
    """iota, gamma and the target Y of an embedding X -> Y.

    `gamma` is the multiplication factor of each node and fixes Psi; `grid` is the
    spacing of the lifted row lengths and `scale` the factor on riggings and vacancy
    numbers. Both equal gamma except at node n: A_2n^(2) has grid 1 there, and
    A_2n^(2)dag has grid and scale 2 while gamma_n = 1.
    """

    x_type: AffineType
    y_type: AffineType
    orbits: Tuple[Tuple[int, ...], ...]
    gamma: Tuple[int, ...]
    grid: Tuple[int, ...]
    scale: Tuple[int, ...]
    sigma_order: int

    def iota(self, a: int) -> Tuple[int, ...]:
        return self.orbits[a]

    def representative(self, a: int) -> int:
        return self.orbits[a][0]

    def node_of(self, b: int) -> int:
        for a, orbit in enumerate(self.orbits):
            if b in orbit:
                return a
        raise KeyError(b)


def _orbits(x: AffineType) -> Tuple[AffineType, List[Tuple[int, ...]], int]:
    n = x.n
    if x.family in _A_CHAIN:
        if x.family == Family.A2EVEN_DAG and n < 2:
            raise UnsupportedTypeError(f"{x} has no virtual realization in rank 1")
        orbits = [(0,)] + [(i, 2 * n - i) for i in range(1, n)] + [(n,)]
        return AffineType(Family.A1, 2 * n - 1), orbits, 2
    if x.family in _D_TARGET:
        orbits = [(i,) for i in range(n)] + [(n, n + 1)]
        return AffineType(Family.D1, n + 1), orbits, 2
    if x.family in (Family.F1, Family.E2):
        return AffineType(Family.E1, 6), [(0,), (6,), (3,), (2, 4), (1, 5)], 2
    if x.family in (Family.G1, Family.D3):
        return AffineType(Family.D1, 4), [(0,), (2,), (1, 3, 4)], 3
    raise NotAnEmbeddingError(f"{x} is simply-laced untwisted and embeds only into itself")


def _gammas(x: AffineType, sigma_order: int) -> Tuple[int, ...]:
    data = dynkin_data(x)
    multiple = [(i, j) for i, j, aij, aji in data.bonds if aij * aji > 1]
    n = x.n
    gamma = [1] * (n + 1)
    if x.family in _A_CHAIN:
        # two arrows: gamma is 2 at an end node whose arrow points away from it
        for end in (0, n):
            for i, j in multiple:
                if end in (i, j) and data.arrow_head(i, j) != end:
                    gamma[end] = 2
        return tuple(gamma)
    (i, j), = multiple
    head = data.arrow_head(i, j)
    graph = nx.Graph()
    graph.add_nodes_from(x.nodes)
    graph.add_edges_from((p, q) for p, q, _, _ in data.bonds if {p, q} != {i, j})
    zero_component = nx.node_connected_component(graph, 0)
    if head not in zero_component:
        for node in zero_component:
            gamma[node] = sigma_order
    return tuple(gamma)


@lru_cache(maxsize=None)
def embedding(x: AffineType) -> EmbeddingData:
    y, orbits, sigma_order = _orbits(x)
    gamma = _gammas(x, sigma_order)
    grid, scale = list(gamma), list(gamma)
    if x.family == Family.A2EVEN:
        grid[x.n] = 1
    elif x.family == Family.A2EVEN_DAG:
        grid[x.n] = scale[x.n] = 2
    return EmbeddingData(
        x_type=x,
        y_type=y,
        orbits=tuple(orbits),
        gamma=gamma,
        grid=tuple(grid),
        scale=tuple(scale),
        sigma_order=sigma_order,
    )


def psi_weight(x: AffineType, lam: Weight) -> Weight:
    """Psi(Lambda_a) = gamma_a sum_{b in iota(a)} Lambda_b on classical weights."""
    emb = embedding(x)
    coeffs = [0] * emb.y_type.n
    for a in x.classical_nodes:
        for b in emb.iota(a):
            coeffs[b - 1] += emb.gamma[a] * lam.coeffs[a - 1]
    return Weight(tuple(coeffs))


def psi_inverse(x: AffineType, w: Weight) -> Optional[Weight]:
    """Preimage of w under Psi, or None when w is off the embedded lattice."""
    emb = embedding(x)
    coeffs = []
    for a in x.classical_nodes:
        values = {w.coeffs[b - 1] for b in emb.iota(a)}
        if len(values) != 1:
            return None
        value = values.pop()
        if value % emb.gamma[a]:
            return None
        coeffs.append(value // emb.gamma[a])
    return Weight(tuple(coeffs))


def lift_L(x: AffineType, L: TensorSpec) -> TensorSpec:
    """Tensor spec of V-hat: B^{a,s} -> tensor over b in iota(a) of B_Y^{b, gamma_a s}."""
    emb = embedding(x)
    factors: List[Tuple[int, int]] = []
    for r, s in L.factors:
        if x.family == Family.A2EVEN and r == x.n:
            factors.extend([(r, s), (r, s)])
        else:
            factors.extend((b, emb.gamma[r] * s) for b in emb.iota(r))
    return TensorSpec(tuple(factors))


def _admit(emb: EmbeddingData):
    x = emb.x_type

    def admit(parent: KleberNode, tau, d, ell: int) -> bool:
        for orbit in emb.orbits[1:]:
            if len({tau[b - 1] for b in orbit}) != 1:
                return False
        if parent.edge is None:
            return True
        for a in x.classical_nodes:
            grid = emb.grid[a]
            if grid > 1 and (ell - 1) % grid:
                if any(d[b - 1] != parent.edge[b - 1] for b in emb.iota(a)):
                    return False
        return True

    return admit


def _is_selected(emb: EmbeddingData, node: KleberNode) -> bool:
    if node.edge is None:
        return True
    for a in emb.x_type.classical_nodes:
        grid = emb.grid[a]
        if grid > 1 and node.depth % grid and any(node.edge[b - 1] for b in emb.iota(a)):
            return False
    return True


def _trim(tree: KleberTree) -> KleberTree:
    keep: Set[int] = set()
    for node in reversed(tree.nodes):
        if node.selected or any(child in keep for child in node.children):
            keep.add(node.node_id)
    keep.add(0)
    renumber = {old: new for new, old in enumerate(sorted(keep))}
    nodes = []
    for old in sorted(keep):
        node = tree.nodes[old]
        nodes.append(KleberNode(
            node_id=renumber[old],
            depth=node.depth,
            weight=node.weight,
            path_sum=node.path_sum,
            edge=node.edge,
            parent=None if node.parent is None else renumber[node.parent],
            children=[renumber[c] for c in node.children if c in keep],
            selected=node.selected,
            superlattice=node.superlattice,
        ))
    return KleberTree(y_type=tree.y_type, spec=tree.spec, target=tree.target,
                      nodes=nodes, iterations=tree.iterations)


def virtual_kleber_tree(x: AffineType, L: TensorSpec, lam: Optional[Weight] = None,
                        trim: bool = True) -> KleberTree:
    """The tree T-hat(B) over Y, with selected and superlattice flags on every node."""
    emb = embedding(x)
    target = psi_weight(x, lam) if lam is not None else None
    tree = grow_tree(emb.y_type, lift_L(x, L), target, admit=_admit(emb))
    for node in tree.nodes:
        in_image = psi_inverse(x, node.weight) is not None
        node.superlattice = not in_image
        node.selected = in_image and _is_selected(emb, node)
    logger.debug("virtual kleber tree for %s %s: %d nodes, %d selected",
                 x, L, len(tree), sum(n.selected for n in tree.nodes))
    return _trim(tree) if trim else tree


def select_nodes(x: AffineType, tree: KleberTree) -> Set[Tuple[Weight, Configuration]]:
    """(Y-weight, Y-configuration) of every selected node."""
    return {path_to_config(tree, node) for node in tree.nodes if node.selected}


def satisfies_vrc(x: AffineType, nu_hat: Configuration) -> bool:
    """Orbit symmetry and grid support of a Y-configuration."""
    emb = embedding(x)
    for a in x.classical_nodes:
        orbit = emb.iota(a)
        if len({nu_hat.partitions[b - 1] for b in orbit}) != 1:
            return False
        if any(row % emb.grid[a] for row in nu_hat.partitions[orbit[0] - 1]):
            return False
    return True


def brute_force_virtual_configs(x: AffineType, L: TensorSpec, lam: Weight) -> Set[Configuration]:
    """C^v(B, lambda) by filtering every Y-configuration."""
    emb = embedding(x)
    found = brute_force_configs(emb.y_type, lift_L(x, L), psi_weight(x, lam))
    return {nu for nu in found if satisfies_vrc(x, nu)}


def selected_virtual_configs(x: AffineType, L: TensorSpec, lam: Weight) -> Set[Configuration]:
    tree = virtual_kleber_tree(x, L, lam)
    target = psi_weight(x, lam)
    return {nu for weight, nu in select_nodes(x, tree) if weight == target}


def devirtualize(x: AffineType, nu_hat: Configuration) -> Configuration:
    if not satisfies_vrc(x, nu_hat):
        raise NotVirtualError(f"{nu_hat} is not a virtual configuration for {x}")
    emb = embedding(x)
    return Configuration.from_partitions([
        [row // emb.grid[a] for row in nu_hat.partitions[emb.representative(a) - 1]]
        for a in x.classical_nodes
    ])


def virtualize_configuration(x: AffineType, nu: Configuration) -> Configuration:
    emb = embedding(x)
    partitions: List[Tuple[int, ...]] = [()] * emb.y_type.n
    for a in x.classical_nodes:
        for b in emb.iota(a):
            partitions[b - 1] = tuple(emb.grid[a] * row for row in nu.partitions[a - 1])
    return Configuration.from_partitions(partitions)


def virtualize(x: AffineType, rc: RiggedConfiguration) -> RiggedConfiguration:
    """(nu, J) -> (nu-hat, J-hat) with J-hat = scale_a J on the grid."""
    emb = embedding(x)
    riggings = []
    for (a, i), part in rc.riggings:
        for b in emb.iota(a):
            riggings.append(((b, emb.grid[a] * i), tuple(emb.scale[a] * v for v in part)))
    return RiggedConfiguration(virtualize_configuration(x, rc.nu), tuple(sorted(riggings)))


def devirtualize_rigged(x: AffineType, rc_hat: RiggedConfiguration) -> RiggedConfiguration:
    emb = embedding(x)
    nu = devirtualize(x, rc_hat.nu)
    riggings = []
    for a in x.classical_nodes:
        b = emb.representative(a)
        for i in nu.row_lengths(a):
            part = rc_hat.rigging(b, emb.grid[a] * i)
            for other in emb.iota(a)[1:]:
                if rc_hat.rigging(other, emb.grid[a] * i) != part:
                    raise NotVirtualError(f"riggings differ across the orbit of node {a}")
            if any(v % emb.scale[a] for v in part):
                raise NotVirtualError(f"rigging {part} is not a multiple of {emb.scale[a]}")
            riggings.append(((a, i), tuple(v // emb.scale[a] for v in part)))
    return RiggedConfiguration(nu, tuple(sorted(riggings)))


def virtual_rigged(x: AffineType, L: TensorSpec, nu_hat: Configuration) -> List[RiggedConfiguration]:
    """All (nu-hat, J-hat) in RC^v over a fixed virtual configuration."""
    emb = embedding(x)
    y, lifted = emb.y_type, lift_L(x, L)
    nu = devirtualize(x, nu_hat)
    boxes = {}
    for a in x.classical_nodes:
        b = emb.representative(a)
        for i in nu.row_lengths(a):
            boxes[(a, i)] = vacancy(y, lifted, nu_hat, b, emb.grid[a] * i) // emb.scale[a]
    return [virtualize(x, rc) for rc in riggings_for(nu, boxes)]


def virtual_configs(x: AffineType, L: TensorSpec, lam: Weight) -> Set[Configuration]:
    """C(B, lambda) of X obtained by devirtualizing the selected nodes."""
    return {devirtualize(x, nu_hat) for nu_hat in selected_virtual_configs(x, L, lam)}


def m_polynomial_via_virtual(x: AffineType, L: TensorSpec, lam: Weight) -> QPolynomial:
    """sum over RC^v(B, lambda) of q^{cc(nu-hat, J-hat)/gamma_0}."""
    emb = embedding(x)
    y, lifted = emb.y_type, lift_L(x, L)
    gamma0 = emb.gamma[0]
    total = QPolynomial()
    for nu_hat in sorted(selected_virtual_configs(x, L, lam), key=lambda c: c.partitions):
        nu = devirtualize(x, nu_hat)
        term = QPolynomial.monomial(Fraction(cocharge(y, nu_hat)) / gamma0)
        for a in x.classical_nodes:
            b = emb.representative(a)
            power = Fraction(emb.scale[a] * len(emb.iota(a)), gamma0)
            for i in nu.row_lengths(a):
                j = emb.grid[a] * i
                p_hat = vacancy(y, lifted, nu_hat, b, j)
                binomial = gaussian_binomial(nu_hat.m(b, j), p_hat // emb.scale[a])
                term = term * binomial.substitute_power(power)
        total = total + term
    if not total.is_integral():
        raise ConjectureViolation(
            f"non-integral exponent in the virtual fermionic sum for {x}",
            {"type": x.label, "tensor": str(L), "weight": list(lam.coeffs), "M": str(total)})
    return total


def check_vacancy_scaling(x: AffineType, L: TensorSpec, nu_hat: Configuration) -> bool:
    """p-hat^(b)_{grid_a i} = scale_a p^(a)_i for every b in iota(a)."""
    emb = embedding(x)
    y, lifted = emb.y_type, lift_L(x, L)
    nu = devirtualize(x, nu_hat)
    for a in x.classical_nodes:
        for i in range(1, max(nu.max_part, L.max_width) + 2):
            expected = emb.scale[a] * vacancy(x, L, nu, a, i)
            for b in emb.iota(a):
                if vacancy(y, lifted, nu_hat, b, emb.grid[a] * i) != expected:
                    return False
    return True


def psi_delta_check(x: AffineType) -> bool:
    """Psi(delta^X) = a_0 gamma_0 delta^Y on root coordinates."""
    emb = embedding(x)
    ax = dynkin_data(x).a
    ay = dynkin_data(emb.y_type).a
    for a, orbit in enumerate(emb.orbits):
        for b in orbit:
            if ax[a] * emb.gamma[a] != ax[0] * emb.gamma[0] * ay[b]:
                return False
    return True

