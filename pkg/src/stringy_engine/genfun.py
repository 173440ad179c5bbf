"""Univariate rational functions over Q and cone generating functions.

Polynomials are sympy ``Poly`` objects over ``QQ`` in the symbol ``u``.
Negative exponents appear when a cone is graded by a negative vector; they
are absorbed into the denominator.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction
from itertools import count

from sympy import QQ, Poly, Rational, Symbol

from stringy_engine.errors import NonPositiveGrading, PoleError
from stringy_engine.lattice_points import parallelepiped_with_coefficients, simplicial_pieces
from stringy_engine.linalg import coordinates_in, dot
from stringy_engine.polytope import Cone

logger = logging.getLogger(__name__)

U = Symbol("u")


def to_fraction(value) -> Fraction:
    """Convert a sympy rational number to a Fraction."""
    return Fraction(int(value.p), int(value.q))


def to_rational(value) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def as_poly(value) -> Poly:
    """Coerce ints, Fractions, sympy expressions and Polys to a Poly in ``u`` over QQ."""
    if isinstance(value, Poly):
        return value.set_domain(QQ)
    if isinstance(value, Fraction | int):
        return Poly(to_rational(value), U, domain=QQ)
    return Poly(value, U, domain=QQ)


def poly_from_coefficients(coefficients: Sequence) -> Poly:
    """Poly from coefficients listed by increasing degree."""
    if not coefficients:
        return Poly(0, U, domain=QQ)
    return Poly([to_rational(c) for c in reversed(coefficients)], U, domain=QQ)


def poly_coefficients(poly: Poly) -> list[Fraction]:
    """Coefficients of ``poly`` by increasing degree."""
    if poly.is_zero:
        return [Fraction(0)]
    return [to_fraction(c) for c in reversed(poly.all_coeffs())]


class RationalFunctionUQ:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = as_poly(num), as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = as_poly(1)
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num, den = num.exquo(g), den.exquo(g)
            lc = den.LC()
            num, den = num.quo_ground(lc), den.quo_ground(lc)
        self.num = num
        self.den = den

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "RationalFunctionUQ":
        """``coefficient * u**exponent`` for any integer exponent."""
        c = to_rational(coefficient)
        if exponent >= 0:
            return cls(Poly(c * U**exponent, U, domain=QQ))
        return cls(Poly(c, U, domain=QQ), Poly(U ** (-exponent), U, domain=QQ))

    @classmethod
    def one_minus_power(cls, exponent: int) -> "RationalFunctionUQ":
        """``1 - u**exponent`` for a nonzero integer exponent."""
        if exponent > 0:
            return cls(Poly(1 - U**exponent, U, domain=QQ))
        return cls(Poly(U ** (-exponent) - 1, U, domain=QQ), Poly(U ** (-exponent), U, domain=QQ))

    @staticmethod
    def _coerce(other) -> "RationalFunctionUQ":
        if isinstance(other, RationalFunctionUQ):
            return other
        return RationalFunctionUQ(other)

    def __add__(self, other) -> "RationalFunctionUQ":
        other = self._coerce(other)
        return RationalFunctionUQ(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunctionUQ":
        return RationalFunctionUQ(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunctionUQ":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunctionUQ":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunctionUQ":
        other = self._coerce(other)
        return RationalFunctionUQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunctionUQ":
        other = self._coerce(other)
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunctionUQ(self.num * other.den, self.den * other.num)

    def __pow__(self, exponent: int) -> "RationalFunctionUQ":
        if exponent < 0:
            return RationalFunctionUQ(1) / (self ** (-exponent))
        return RationalFunctionUQ(self.num**exponent, self.den**exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunctionUQ):
            try:
                other = RationalFunctionUQ(other)
            except Exception:
                return NotImplemented
        return self.numerator_coefficients() == other.numerator_coefficients() and (
            self.denominator_coefficients() == other.denominator_coefficients()
        )

    def __hash__(self) -> int:
        return hash(
            (tuple(self.numerator_coefficients()), tuple(self.denominator_coefficients()))
        )

    def __repr__(self) -> str:
        return f"RationalFunctionUQ(({self.num.as_expr()}) / ({self.den.as_expr()}))"

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def numerator_coefficients(self) -> list[Fraction]:
        return poly_coefficients(self.num)

    def denominator_coefficients(self) -> list[Fraction]:
        return poly_coefficients(self.den)

    def evaluate(self, x) -> Fraction:
        """Value at the rational point ``x``.

        Raises:
            PoleError: If the denominator vanishes at ``x``
        """
        point = to_rational(x)
        den = self.den.eval(point)
        if den == 0:
            raise PoleError(f"pole at u = {x}")
        return to_fraction(self.num.eval(point)) / to_fraction(den)

    def series_expand(self, order: int) -> list[Fraction]:
        """Power series coefficients ``c_0 .. c_order`` around 0.

        Raises:
            PoleError: If the denominator vanishes at 0
        """
        num = self.numerator_coefficients()
        den = self.denominator_coefficients()
        if den[0] == 0:
            raise PoleError("no power series expansion at a pole")
        series: list[Fraction] = []
        for n in range(order + 1):
            acc = num[n] if n < len(num) else Fraction(0)
            for i in range(1, min(n, len(den) - 1) + 1):
                acc -= den[i] * series[n - i]
            series.append(acc / den[0])
        return series

    def shift(self, exponent: int) -> "RationalFunctionUQ":
        """Multiply by ``u**exponent``."""
        return self * RationalFunctionUQ.monomial(exponent)

    def invert_variable(self) -> "RationalFunctionUQ":
        """The function ``f(1/u)``."""
        dn, dd = self.num.degree(), self.den.degree()
        if self.num.is_zero:
            return self
        rev_num = Poly(list(reversed(self.num.all_coeffs())), U, domain=QQ)
        rev_den = Poly(list(reversed(self.den.all_coeffs())), U, domain=QQ)
        return RationalFunctionUQ(rev_num, rev_den).shift(dd - dn)


def _laurent_sum(exponents: Sequence[int]) -> RationalFunctionUQ:
    low = min(exponents)
    counts: dict[int, int] = {}
    for e in exponents:
        counts[e - low] = counts.get(e - low, 0) + 1
    top = max(counts)
    poly = poly_from_coefficients([counts.get(i, 0) for i in range(top + 1)])
    return RationalFunctionUQ(poly).shift(low)


def _generic_weights(cone: Cone, pieces: list[list[tuple[int, ...]]]) -> list[list[Fraction]]:
    """Coordinates of a generic interior point of ``cone`` in every simplicial piece."""
    for attempt in count():
        weights = [1 + Fraction(1, (attempt + 2) ** (j + 1)) for j in range(len(cone.generators))]
        point = [
            sum(w * g[c] for w, g in zip(weights, cone.generators))
            for c in range(cone.ambient_dim)
        ]
        coords = [coordinates_in(gens, point) for gens in pieces]
        if all(lam != 0 for row in coords for lam in row):
            return coords
    raise AssertionError("unreachable")


def r_cone(cone: Cone, m: Sequence[int], closed: bool = True) -> RationalFunctionUQ:
    """Generating function of the lattice points of ``cone`` graded by ``m``.

    Args:
        cone: Pointed rational cone
        m: Grading vector, of one strict sign on the extreme rays
        closed: Sum over the closed cone, or over its relative interior

    Returns:
        ``sum t^<m, n>`` over the lattice points as a reduced rational function

    Raises:
        NonPositiveGrading: If ``m`` vanishes on a ray or changes sign
    """
    if cone.is_zero:
        return RationalFunctionUQ(1)
    grades = [dot(m, g) for g in cone.generators]
    if any(g == 0 for g in grades) or (any(g > 0 for g in grades) and any(g < 0 for g in grades)):
        raise NonPositiveGrading(f"grading {tuple(m)} is not of one strict sign on {cone!r}")

    pieces = simplicial_pieces(cone)
    weights = _generic_weights(cone, pieces)
    total = RationalFunctionUQ(0)
    for gens, lam in zip(pieces, weights):
        open_coords = [(lam_i < 0) if closed else (lam_i > 0) for lam_i in lam]
        exponents = []
        for point, frac in parallelepiped_with_coefficients(gens):
            shifted = list(point)
            for i, f in enumerate(frac):
                if f == 0 and open_coords[i]:
                    shifted = [a + b for a, b in zip(shifted, gens[i])]
            exponents.append(dot(m, shifted))
        term = _laurent_sum(exponents)
        for g in gens:
            term = term / RationalFunctionUQ.one_minus_power(dot(m, g))
        total = total + term
    logger.debug("R(%r, %s, closed=%s) over %d pieces", cone, tuple(m), closed, len(pieces))
    return total


def reciprocity_check(cone: Cone, m: Sequence[int]) -> bool:
    """Check ``R(C, m) == (-1)^dim R(C interior, -m)`` exactly."""
    lhs = r_cone(cone, m, closed=True)
    rhs = r_cone(cone, [-c for c in m], closed=False)
    return lhs == rhs * ((-1) ** cone.dim)


def vanishing_limit(cone: Cone, m: Sequence[int]) -> Fraction:
    """Limit of ``(1 - t)^dim * R(C, m, t)`` as ``t -> 1``."""
    factor = RationalFunctionUQ(Poly(1 - U, U, domain=QQ)) ** cone.dim
    return (r_cone(cone, m) * factor).evaluate(1)
