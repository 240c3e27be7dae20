import pytest

from app.kr.crystals import (
    DualCrystal,
    RowCrystal,
    all_elements,
    classical_decomposition,
    dual,
    generate_graph,
    kr_crystal,
    level,
    restricted_paths,
    tensor_crystal,
)
from app.kr.errors import GraphCapExceeded, UnsupportedTypeError
from app.kr.root_data import Weight, parse_type


class TestRowCrystal:
    def test_type_c_operators(self, c2):
        row = kr_crystal(c2, 1, 1)
        assert isinstance(row, RowCrystal)
        assert row.e((0, 0, 1, 0), 2) == (0, 1, 0, 0)
        assert row.f((0, 1, 0, 0), 2) == (0, 0, 1, 0)
        assert row.e((1, 0, 0, 0), 1) is None
        assert row.label((0, 0, 1, 0)) == "-2"

    def test_zero_arrows_through_the_empty_row(self, c2):
        row = kr_crystal(c2, 1, 2)
        empty = (0, 0, 0, 0)
        assert row.e((2, 0, 0, 0), 0) == empty
        assert row.e(empty, 0) == (0, 0, 0, 2)
        assert row.f(empty, 0) == (2, 0, 0, 0)
        assert row.label(empty) == "()"

    @pytest.mark.parametrize(
        "name, s, count",
        [("C2~1", 1, 4), ("C2~1", 2, 11), ("A4~2", 1, 5), ("D3~2", 1, 6), ("A2~1", 2, 6), ("B3~1", 1, 7)],
    )
    def test_element_counts(self, name, s, count):
        assert len(all_elements(kr_crystal(parse_type(name), 1, s))) == count

    def test_classical_decomposition(self, c2):
        assert classical_decomposition(kr_crystal(c2, 1, 2)) == {Weight((2, 0)): 1, Weight((0, 0)): 1}
        a4 = kr_crystal(parse_type("A4~2"), 1, 2)
        assert classical_decomposition(a4) == {Weight((2, 0)): 1, Weight((1, 0)): 1, Weight((0, 0)): 1}

    @pytest.mark.parametrize("s, weights", [(1, [(2,)]), (2, [(0,), (4,)]), (3, [(2,), (6,)])])
    def test_rank_one_dagger_letters_have_weight_two(self, s, weights):
        row = kr_crystal(parse_type("A2~2dag"), 1, s)
        assert classical_decomposition(row) == {Weight(w): 1 for w in weights}

    def test_weights(self, c2):
        row = kr_crystal(c2, 1, 1)
        assert row.weight((1, 0, 0, 0)) == Weight((1, 0))
        assert row.weight((0, 1, 0, 0)) == Weight((-1, 1))
        assert row.weight((0, 0, 0, 1)) == Weight((-1, 0))

    def test_level(self, a1):
        assert level(kr_crystal(a1, 1, 1)) == 1
        assert level(kr_crystal(a1, 1, 2)) == 2


class TestDualAndTensor:
    def test_column_dual_in_type_a(self):
        a2 = parse_type("A2~1")
        column = kr_crystal(a2, 2, 1)
        assert isinstance(column, DualCrystal)
        assert column.highest() == (0, 0, 1)
        assert column.weight(column.highest()) == Weight((0, 1))
        assert dual(column) == kr_crystal(a2, 1, 1)

    def test_tensor_rule(self, a1):
        tensor = tensor_crystal(a1, [(1, 1), (1, 1)])
        assert tensor.e(((1, 0), (0, 1)), 1) == ((1, 0), (1, 0))
        assert tensor.f(((1, 0), (1, 0)), 1) == ((1, 0), (0, 1))
        assert tensor.e(((0, 1), (1, 0)), 1) is None

    def test_restricted_paths(self, a1):
        tensor = tensor_crystal(a1, [(1, 1), (1, 1)])
        assert restricted_paths(tensor, Weight((0,))) == [((0, 1), (1, 0))]
        assert restricted_paths(tensor, Weight((2,))) == [((1, 0), (1, 0))]

    def test_tensor_decomposition(self):
        tensor = tensor_crystal(parse_type("A2~1"), [(1, 1), (1, 1)])
        assert classical_decomposition(tensor) == {Weight((2, 0)): 1, Weight((0, 1)): 1}


class TestGraph:
    def test_arcs_are_keyed_by_index(self, a1):
        graph = generate_graph(kr_crystal(a1, 1, 1))
        assert len(graph) == 2
        assert graph.arcs() == [((0, 1), (1, 0), 0), ((1, 0), (0, 1), 1)]

    def test_cap(self, c2):
        with pytest.raises(GraphCapExceeded):
            generate_graph(kr_crystal(c2, 1, 2), cap=5)

    def test_unsupported_factor(self, c2):
        with pytest.raises(UnsupportedTypeError):
            kr_crystal(c2, 2, 1)
        with pytest.raises(UnsupportedTypeError):
            kr_crystal(parse_type("E6~1"), 1, 1)
