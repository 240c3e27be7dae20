"""Worked trees with known nodes, configurations and vacancy numbers."""
from dataclasses import dataclass
from typing import List, Tuple

from app.kr.fermionic import vacancy_table
from app.kr.kleber import kleber_tree, path_to_config
from app.kr.root_data import Weight, parse_type
from app.kr.tensor_spec import TensorSpec
from app.kr.virtual_kleber import embedding, lift_L, psi_inverse, virtual_kleber_tree


@dataclass(frozen=True)
class FigureRow:
    weight: Tuple[int, ...]
    partitions: Tuple[Tuple[int, ...], ...]
    vacancies: Tuple[Tuple[Tuple[int, int], int], ...]

    def key(self):
        return self.weight, self.partitions, self.vacancies


@dataclass(frozen=True)
class FigureTree:
    name: str
    type: str
    tensor: Tuple[str, ...]
    node_count: int
    rows: Tuple[FigureRow, ...]

    @property
    def spec(self) -> TensorSpec:
        return TensorSpec.parse(self.tensor)


def _row(weight, partitions, vacancies) -> FigureRow:
    return FigureRow(tuple(weight), tuple(tuple(p) for p in partitions),
                     tuple(sorted(vacancies.items())))


# Kleber tree of A_3^(1), B = B^{3,2} (x) B^{2,1} (x) B^{1,1} (x) B^{1,1}
A3_TREE = FigureTree(
    name="kleber-A3",
    type="A3~1",
    tensor=("3,2", "2,1", "1,1", "1,1"),
    node_count=10,
    rows=(
        _row((2, 1, 2), [(), (), ()], {}),
        _row((0, 2, 2), [(1,), (), ()], {(1, 1): 0}),
        _row((1, 0, 3), [(1,), (1,), ()], {(1, 1): 1, (2, 1): 0}),
        _row((1, 1, 1), [(1,), (1,), (1,)], {(1, 1): 1, (2, 1): 1, (3, 1): 0}),
        _row((0, 0, 2), [(1, 1), (1, 1), (1,)], {(1, 1): 0, (2, 1): 0, (3, 1): 1}),
        _row((0, 0, 2), [(2,), (2,), (1,)], {(1, 2): 0, (2, 2): 0, (3, 1): 0}),
        _row((3, 0, 1), [(), (1,), (1,)], {(2, 1): 0, (3, 1): 0}),
        _row((0, 1, 0), [(2,), (2,), (2,)], {(1, 2): 0, (2, 2): 1, (3, 2): 0}),
        _row((0, 1, 0), [(1, 1), (1, 1), (2,)], {(1, 1): 0, (2, 1): 0, (3, 2): 0}),
        _row((2, 0, 0), [(1,), (2,), (2,)], {(1, 1): 1, (2, 2): 0, (3, 2): 0}),
    ),
)

# Virtual Kleber tree of C_2^(1) inside A_3^(1), B = B^{1,2} (x) B^{1,1} (x) B^{2,1};
# rows are the selected nodes, weights in X-coordinates, vacancies of Y
C2_VIRTUAL_TREE = FigureTree(
    name="virtual-kleber-C2",
    type="C2~1",
    tensor=("1,2", "1,1", "2,1"),
    node_count=9,
    rows=(
        _row((3, 1), [(), (), ()], {}),
        _row((1, 2), [(1,), (), (1,)], {(1, 1): 0, (3, 1): 0}),
        _row((3, 0), [(1,), (2,), (1,)], {(1, 1): 1, (2, 2): 0, (3, 1): 1}),
        _row((1, 1), [(2,), (2,), (2,)], {(1, 2): 1, (2, 2): 2, (3, 2): 1}),
        _row((1, 0), [(2, 1), (2, 2), (2, 1)],
             {(1, 1): 0, (1, 2): 1, (2, 2): 0, (3, 1): 0, (3, 2): 1}),
        _row((1, 0), [(3,), (4,), (3,)], {(1, 3): 0, (2, 4): 0, (3, 3): 0}),
    ),
)


def _sorted_rows(rows) -> List:
    return sorted(row.key() for row in rows)


def kleber_rows(figure: FigureTree) -> Tuple[int, List]:
    """Node count and (weight, partitions, vacancies) of every node of the computed tree."""
    t = parse_type(figure.type)
    spec = figure.spec
    tree = kleber_tree(t, spec)
    rows = []
    for node in tree.nodes:
        weight, nu = path_to_config(tree, node)
        rows.append(_row(weight.coeffs, nu.partitions, vacancy_table(t, spec, nu)))
    return len(tree), _sorted_rows(rows)


def virtual_kleber_rows(figure: FigureTree) -> Tuple[int, List]:
    """Node count of the trimmed tree and the rows of its selected nodes."""
    x = parse_type(figure.type)
    spec = figure.spec
    y, lifted = embedding(x).y_type, lift_L(x, spec)
    tree = virtual_kleber_tree(x, spec)
    rows = []
    for node in tree.nodes:
        if not node.selected:
            continue
        weight, nu_hat = path_to_config(tree, node)
        x_weight: Weight = psi_inverse(x, weight)
        rows.append(_row(x_weight.coeffs, nu_hat.partitions, vacancy_table(y, lifted, nu_hat)))
    return len(tree), _sorted_rows(rows)


def expected_rows(figure: FigureTree) -> List:
    return _sorted_rows(figure.rows)


FIGURES = {figure.name: figure for figure in (A3_TREE, C2_VIRTUAL_TREE)}

__all__ = [
    "A3_TREE",
    "C2_VIRTUAL_TREE",
    "FIGURES",
    "expected_rows",
    "kleber_rows",
    "virtual_kleber_rows",
]
