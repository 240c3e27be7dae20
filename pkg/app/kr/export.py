"""JSON and DOT renderings of trees, polynomials and crystal graphs."""
from pathlib import Path
from typing import Iterable, List

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from app.schemas import (
    CrystalArcOut,
    CrystalGraphOut,
    CrystalVertexOut,
    KleberNodeOut,
    KleberTreeOut,
    PolynomialOut,
)

from .crystals import CrystalGraph
from .kleber import KleberTree, path_to_config
from .qpoly import QPolynomial
from .root_data import AffineType
from .tensor_spec import TensorSpec

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def polynomial_out(poly: QPolynomial) -> PolynomialOut:
    return PolynomialOut(text=str(poly), terms=poly.to_pairs())


def encode(element) -> str:
    """Canonical count encoding: nested tuples written without spaces."""
    if isinstance(element, tuple) and element and isinstance(element[0], tuple):
        return "|".join(encode(part) for part in element)
    return ",".join(str(c) for c in element)


def tree_out(tree: KleberTree, x_type: AffineType, spec: TensorSpec, virtual: bool) -> KleberTreeOut:
    nodes: List[KleberNodeOut] = []
    for node in tree.nodes:
        _, nu = path_to_config(tree, node)
        nodes.append(KleberNodeOut(
            id=node.node_id,
            depth=node.depth,
            parent=node.parent,
            weight=list(node.weight.coeffs),
            edge=None if node.edge is None else list(node.edge),
            config=[list(part) for part in nu.partitions],
            selected=node.selected,
            superlattice=node.superlattice,
        ))
    return KleberTreeOut(
        type=x_type.label,
        tensor=list(spec.factors),
        virtual=virtual,
        ambient_type=tree.y_type.label,
        nodes=nodes,
    )


def tree_dot(out: KleberTreeOut) -> str:
    def config_text(config: Iterable[List[int]]) -> str:
        return " ".join("(" + ",".join(map(str, part)) + ")" for part in config)

    nodes = [{
        "id": node.id,
        "parent": node.parent,
        "weight": ",".join(map(str, node.weight)),
        "edge": "" if node.edge is None else ",".join(map(str, node.edge)),
        "config": config_text(node.config),
        "selected": node.selected,
        "superlattice": node.superlattice,
    } for node in out.nodes]
    title = f"{out.type} {' '.join(f'{r},{s}' for r, s in out.tensor)}"
    return _env.get_template("kleber_tree.dot.j2").render(title=title, nodes=nodes)


def graph_out(graph: CrystalGraph, x_type: AffineType, spec: TensorSpec) -> CrystalGraphOut:
    crystal = graph.crystal
    vertices = [CrystalVertexOut(key=encode(b), label=crystal.label(b), weight=list(crystal.weight(b).coeffs))
                for b in graph.elements()]
    arcs = [CrystalArcOut(source=encode(u), target=encode(v), index=i) for u, v, i in graph.arcs()]
    return CrystalGraphOut(
        type=x_type.label,
        tensor=list(spec.factors),
        highest=encode(graph.highest),
        vertices=vertices,
        arcs=arcs,
    )


def graph_dot(out: CrystalGraphOut) -> str:
    position = {vertex.key: k for k, vertex in enumerate(out.vertices)}
    vertices = [{"label": vertex.label, "highest": vertex.key == out.highest} for vertex in out.vertices]
    arcs = [{"source": position[arc.source], "target": position[arc.target], "index": arc.index}
            for arc in out.arcs]
    title = f"{out.type} {' '.join(f'{r},{s}' for r, s in out.tensor)}"
    return _env.get_template("crystal_graph.dot.j2").render(title=title, vertices=vertices, arcs=arcs)
