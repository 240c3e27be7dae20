import pytest

from app.kr.errors import InvalidTypeError, ParseError
from app.kr.root_data import (
    Family,
    Weight,
    dominates,
    dynkin_data,
    inv_form,
    parse_type,
    parse_weight,
    to_root_coords,
    weight_from_partition,
)


class TestParseType:
    @pytest.mark.parametrize(
        "text, family, n",
        [
            ("A3~1", Family.A1, 3),
            ("C2~1", Family.C1, 2),
            ("B3~1", Family.B1, 3),
            ("A4~2", Family.A2EVEN, 2),
            ("A4~2dag", Family.A2EVEN_DAG, 2),
            ("A5~2", Family.A2ODD, 3),
            ("D3~2", Family.D2, 2),
        ],
    )
    def test_families(self, text, family, n):
        t = parse_type(text)
        assert (t.family, t.n) == (family, n)
        assert t.label == text

    def test_malformed(self):
        with pytest.raises(ParseError):
            parse_type("C2")
        with pytest.raises(ParseError):
            parse_type("C2~1dag")

    def test_rank_below_minimum(self):
        with pytest.raises(InvalidTypeError):
            parse_type("B2~1")
        with pytest.raises(InvalidTypeError):
            parse_type("D3~1")


class TestDynkinData:
    def test_kac_labels_c2(self):
        data = dynkin_data(parse_type("C2~1"))
        assert data.a == (1, 2, 1)
        assert data.a_dual == (1, 1, 1)

    def test_kac_labels_a3(self):
        data = dynkin_data(parse_type("A3~1"))
        assert data.a == (1, 1, 1, 1)
        assert data.classical_cartan == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))

    def test_arrow_head(self):
        data = dynkin_data(parse_type("C2~1"))
        assert data.arrow_head(0, 1) == 1
        assert data.arrow_head(1, 2) == 1
        assert data.arrow_head(0, 2) is None

    @pytest.mark.parametrize("name", [
        "A3~1", "B3~1", "C3~1", "D4~1", "E6~1", "F4~1", "G2~1",
        "A4~2", "A4~2dag", "A5~2", "D4~2", "E6~2", "D4~3",
    ])
    def test_null_root(self, name):
        data = dynkin_data(parse_type(name))
        size = len(data.a)
        for i in range(size):
            assert sum(data.cartan[i][j] * data.a[j] for j in range(size)) == 0
            assert sum(data.a_dual[j] * data.cartan[j][i] for j in range(size)) == 0
            assert data.cartan[i][i] == 2


class TestInvariantForm:
    def test_simply_laced(self):
        a3 = parse_type("A3~1")
        assert inv_form(a3, (1, 0, 0), (1, 0, 0)) == 2
        assert inv_form(a3, (1, 0, 0), (0, 1, 0)) == -1

    def test_long_root_norm(self, c2):
        assert inv_form(c2, (0, 1), (0, 1)) == 2
        assert inv_form(c2, (1, 0), (1, 0)) == 1


class TestWeights:
    def test_parse_weight(self):
        assert parse_weight("1,0,2", 3) == Weight((1, 0, 2))
        with pytest.raises(ParseError):
            parse_weight("1,0", 3)
        with pytest.raises(ParseError):
            parse_weight("1,x,0")

    def test_partition_weights(self):
        assert weight_from_partition((5, 3, 2), 3) == Weight((2, 1, 2))
        assert weight_from_partition((4, 3, 2, 1), 3) == Weight((1, 1, 1))

    def test_root_coordinates(self):
        a2 = parse_type("A2~1")
        assert to_root_coords(a2, Weight((2, -1))).as_ints() == (1, 0)

    def test_dominance(self):
        a2 = parse_type("A2~1")
        assert dominates(a2, Weight((2, 0)), Weight((0, 1)))
        assert not dominates(a2, Weight((0, 1)), Weight((2, 0)))
