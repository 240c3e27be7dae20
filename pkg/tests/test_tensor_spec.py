import pytest

from app.kr.errors import ParseError
from app.kr.tensor_spec import Configuration, TensorSpec


class TestTensorSpec:
    def test_parse_keeps_order(self):
        spec = TensorSpec.parse(["3,2", "2,1", "1,1", "1,1"])
        assert spec.factors == ((3, 2), (2, 1), (1, 1), (1, 1))
        assert str(spec) == "3,2 2,1 1,1 1,1"

    def test_multiplicities(self):
        spec = TensorSpec.parse(["1,1", "3,2", "1,1"])
        assert spec.multiplicities() == {(1, 1): 2, (3, 2): 1}
        assert spec.multiplicity(1, 1) == 2
        assert spec.node_widths(3) == [2]
        assert spec.max_width == 2
        assert spec.total_width() == 4

    def test_canonical_forgets_order(self):
        left = TensorSpec.parse(["1,2", "2,1"])
        right = TensorSpec.parse(["2,1", "1,2"])
        assert left != right
        assert left.canonical() == right.canonical()
        assert TensorSpec.from_multiplicities(left.multiplicities()) == left.canonical()

    @pytest.mark.parametrize("bad", ["1", "1,2,3", "a,b", "0,1", "1,0"])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            TensorSpec.parse([bad])


class TestConfiguration:
    def test_rows_are_sorted(self):
        nu = Configuration.from_partitions([[1, 2], [], [3, 0]])
        assert nu.partitions == ((2, 1), (), (3,))

    def test_multiplicities(self):
        nu = Configuration.from_multiplicities(2, {(1, 1): 2, (2, 3): 1})
        assert nu.partitions == ((1, 1), (3,))
        assert nu.m(1, 1) == 2
        assert nu.m(2, 1) == 0
        assert nu.multiplicities() == {(1, 1): 2, (2, 3): 1}
        assert nu.row_lengths(1) == [1]
        assert nu.size(2) == 3
        assert nu.max_part == 3

    def test_empty(self):
        nu = Configuration.empty(3)
        assert nu.is_empty()
        assert str(nu) == "() () ()"
