from fractions import Fraction

import pytest

from app.kr.fermionic import (
    brute_force_configs,
    cocharge,
    configurations,
    enumerate_rigged,
    is_admissible,
    m_polynomial,
    rc_cocharge,
    rigged_generating_function,
    vacancy,
    vacancy_table,
)
from app.kr.qpoly import QPolynomial
from app.kr.root_data import Weight, parse_type
from app.kr.tensor_spec import Configuration, TensorSpec

FIGURE_SPEC = TensorSpec.parse(["3,2", "2,1", "1,1", "1,1"])


def poly(*exponents):
    total = QPolynomial()
    for e in exponents:
        total = total + QPolynomial.monomial(e)
    return total


class TestVacancy:
    def test_figure_row(self):
        a3 = parse_type("A3~1")
        nu = Configuration.from_partitions([[1], [2], [2]])
        assert vacancy_table(a3, FIGURE_SPEC, nu) == {(1, 1): 1, (2, 2): 0, (3, 2): 0}

    def test_empty_configuration(self):
        a3 = parse_type("A3~1")
        nu = Configuration.empty(3)
        assert vacancy(a3, FIGURE_SPEC, nu, 1, 1) == 2
        assert vacancy(a3, FIGURE_SPEC, nu, 3, 5) == 2

    def test_admissibility(self):
        a1 = parse_type("A1~1")
        spec = TensorSpec.parse(["1,1", "1,1"])
        assert is_admissible(a1, spec, Configuration.from_partitions([[1]]))
        assert not is_admissible(a1, spec, Configuration.from_partitions([[1, 1]]))


class TestCocharge:
    def test_simply_laced(self):
        a3 = parse_type("A3~1")
        assert cocharge(a3, Configuration.from_partitions([[2], [2], [2]])) == 2
        assert cocharge(a3, Configuration.from_partitions([[1, 1], [1, 1], [2]])) == 4

    def test_riggings_add(self):
        from app.kr.fermionic import RiggedConfiguration

        a1 = parse_type("A1~1")
        nu = Configuration.from_partitions([[2]])
        rc = RiggedConfiguration(nu, (((1, 2), (1,)),))
        assert rc_cocharge(a1, rc) == Fraction(3)


class TestFermionicFormula:
    def test_a1_two_boxes(self):
        a1 = parse_type("A1~1")
        spec = TensorSpec.parse(["1,1", "1,1"])
        assert m_polynomial(a1, spec, Weight((0,))) == poly(1)
        assert m_polynomial(a1, spec, Weight((2,))) == poly(0)

    def test_a3_figure_weight(self):
        a3 = parse_type("A3~1")
        lam = Weight((0, 1, 0))
        assert len(configurations(a3, FIGURE_SPEC, lam)) == 2
        assert m_polynomial(a3, FIGURE_SPEC, lam) == poly(2, 3, 4)

    def test_a2_second_fundamental(self):
        a2 = parse_type("A2~1")
        spec = TensorSpec.parse(["1,1", "1,1"])
        assert m_polynomial(a2, spec, Weight((0, 1))) == poly(1)

    def test_top_weight_gives_one(self):
        c2 = parse_type("C2~1")
        spec = TensorSpec.parse(["1,2", "1,1", "2,1"])
        assert m_polynomial(c2, spec, Weight((3, 1))) == 1

    def test_rigged_sum_matches(self):
        a3 = parse_type("A3~1")
        lam = Weight((0, 1, 0))
        rcs = enumerate_rigged(a3, FIGURE_SPEC, lam)
        assert len(rcs) == 3
        assert rigged_generating_function(a3, rcs) == m_polynomial(a3, FIGURE_SPEC, lam)

    @pytest.mark.parametrize("weight", [(2, 1), (0, 2), (1, 0), (0, 0)])
    def test_tree_matches_brute_force(self, weight):
        a2 = parse_type("A2~1")
        spec = TensorSpec.parse(["1,1", "1,1", "2,1"])
        lam = Weight(weight)
        assert configurations(a2, spec, lam) == brute_force_configs(a2, spec, lam)
