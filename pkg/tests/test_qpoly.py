from fractions import Fraction

import pytest

from app.kr.qpoly import QPolynomial, gaussian_binomial

q = QPolynomial.monomial(1)


class TestArithmetic:
    def test_zero_coefficients_are_dropped(self):
        p = QPolynomial({0: 1, 2: 0}) + QPolynomial({0: -1})
        assert p.is_zero()
        assert str(p) == "0"

    def test_product(self):
        assert (1 + q) * (q + QPolynomial.one()) == QPolynomial({0: 1, 1: 2, 2: 1})

    def test_int_comparison(self):
        assert QPolynomial.one() == 1
        assert QPolynomial() == 0

    def test_invert_and_shift(self):
        p = QPolynomial({0: 1, 2: 3})
        assert p.invert() == QPolynomial({0: 1, -2: 3})
        assert p.shift(-1) == QPolynomial({-1: 1, 1: 3})

    def test_rational_exponents(self):
        p = QPolynomial.monomial(Fraction(1, 2))
        assert not p.is_integral()
        assert (p * p) == q


class TestRendering:
    @pytest.mark.parametrize(
        "terms, text",
        [
            ({1: 1}, "q"),
            ({-1: 1}, "q^-1"),
            ({0: 2, 2: 3}, "2 + 3q^2"),
            ({Fraction(1, 2): 1}, "q^(1/2)"),
            ({0: 1, 1: -1}, "1 - q"),
        ],
    )
    def test_str(self, terms, text):
        assert str(QPolynomial(terms)) == text

    def test_pairs(self):
        assert QPolynomial({0: 1, 2: 3}).to_pairs() == [("0/1", 1), ("2/1", 3)]
        assert QPolynomial.from_pairs([("0/1", 1), ("2/1", 3)]) == QPolynomial({0: 1, 2: 3})

    def test_coefficients(self):
        assert QPolynomial({0: 1, 2: 3}).coefficients() == [1, 0, 3]
        with pytest.raises(ValueError):
            QPolynomial({-1: 1}).coefficients()


class TestGaussianBinomial:
    def test_small_values(self):
        assert gaussian_binomial(1, 1) == 1 + q
        assert gaussian_binomial(2, 0) == 1
        assert gaussian_binomial(0, 5) == 1
        assert gaussian_binomial(2, 2) == QPolynomial({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})

    def test_power(self):
        assert gaussian_binomial(1, 1, 2) == QPolynomial({0: 1, 2: 1})

    def test_value_at_one_is_binomial(self):
        assert gaussian_binomial(3, 2).at_one() == 10
