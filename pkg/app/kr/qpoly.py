"""Sparse Laurent polynomials in q with rational exponents and integer coefficients."""
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

Exponent = Union[int, Fraction]


class QPolynomial:
    """Immutable polynomial sum_e c_e q^e, zero coefficients never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Exponent, int]] = None):
        cleaned: Dict[Fraction, int] = {}
        for exponent, coeff in (terms or {}).items():
            if coeff:
                key = Fraction(exponent)
                cleaned[key] = cleaned.get(key, 0) + int(coeff)
        self._terms = {e: c for e, c in cleaned.items() if c}

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: Exponent, coeff: int = 1) -> "QPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> "QPolynomial":
        return cls({Fraction(e): c for e, c in pairs})

    @property
    def terms(self) -> Dict[Fraction, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: Union["QPolynomial", int]) -> "QPolynomial":
        if isinstance(other, int):
            other = QPolynomial({0: other})
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, 0) + c
        return QPolynomial(merged)

    __radd__ = __add__

    def __mul__(self, other: Union["QPolynomial", int]) -> "QPolynomial":
        if isinstance(other, int):
            return QPolynomial({e: c * other for e, c in self._terms.items()})
        product: Dict[Fraction, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return QPolynomial(product)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPolynomial({0: other})
        return isinstance(other, QPolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def shift(self, exponent: Exponent) -> "QPolynomial":
        return QPolynomial({e + Fraction(exponent): c for e, c in self._terms.items()})

    def substitute_power(self, power: Exponent) -> "QPolynomial":
        """Replace q by q^power."""
        return QPolynomial({e * Fraction(power): c for e, c in self._terms.items()})

    def invert(self) -> "QPolynomial":
        """Replace q by q^-1."""
        return self.substitute_power(-1)

    def at_one(self) -> int:
        return sum(self._terms.values())

    def degree(self) -> Fraction:
        return max(self._terms) if self._terms else Fraction(0)

    def low_degree(self) -> Fraction:
        return min(self._terms) if self._terms else Fraction(0)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self._terms)

    def coefficients(self) -> List[int]:
        """Dense coefficient list from degree 0; integral nonnegative exponents only."""
        if not self.is_integral() or (self._terms and self.low_degree() < 0):
            raise ValueError("dense coefficients need nonnegative integral exponents")
        top = int(self.degree())
        return [self._terms.get(Fraction(k), 0) for k in range(top + 1)]

    def to_pairs(self) -> List[Tuple[str, int]]:
        """Sorted (exponent "num/den", coefficient) pairs."""
        return [(f"{e.numerator}/{e.denominator}", c) for e, c in sorted(self._terms.items())]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e, c in sorted(self._terms.items()):
            if e == 0:
                body = str(abs(c))
            else:
                exp = str(e) if e.denominator == 1 else f"({e})"
                power = "q" if e == 1 else f"q^{exp}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            pieces.append(("-" if c < 0 else "+", body))
        text = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"QPolynomial({self})"


@lru_cache(maxsize=4096)
def _q_binomial_coeffs(m: int, p: int) -> Tuple[int, ...]:
    # [m+p choose m] via the q-Pascal rule [N,k] = [N-1,k-1] + q^k [N-1,k]
    total = m + p
    rows: List[List[int]] = [[1]]
    for big in range(1, total + 1):
        new_row: List[List[int]] = []
        for k in range(big + 1):
            left = rows[k - 1] if k >= 1 else []
            right = rows[k] if k < big else []
            size = max(len(left), len(right) + k)
            coeffs = [0] * size
            for d, c in enumerate(left):
                coeffs[d] += c
            for d, c in enumerate(right):
                coeffs[d + k] += c
            new_row.append(coeffs)
        rows = new_row
    return tuple(rows[m])


def gaussian_binomial(m: int, p: int, power: int = 1) -> QPolynomial:
    """[m+p choose m] evaluated at q^power."""
    if m < 0 or p < 0:
        return QPolynomial()
    coeffs = _q_binomial_coeffs(m, p)
    return QPolynomial({d * power: c for d, c in enumerate(coeffs)})
