"""Calabi-Yau hypersurfaces in the weighted projective spaces ``P(a, 1^d)``.

With ``d = ab + l`` and ``1 <= l <= a - 1`` the Newton polytope is the
simplex ``{x >= 0 : a x_0 + x_1 + ... + x_d = a + d}`` cut by ``x_0 <= b + 1``.
It is realized in the lattice of that hyperplane through the coordinates
``x_0, ..., x_(d-1)`` and translated so the interior point ``(1, ..., 1)`` is
the origin.

Closed forms for both stringy Euler numbers run at any dimension; the
polytopes themselves are only built up to ``STRINGY_MAX_DIM``.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from stringy_engine.config import get_settings
from stringy_engine.errors import DimensionGuard, InvalidParams
from stringy_engine.families.base import PolytopeFamily
from stringy_engine.polytope import Polytope, Side, hull
from stringy_engine.stringy import smooth_hypersurface_euler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WPSParams:
    """Parameters ``(a, b, l)`` of the family, with ``d = ab + l``."""

    a: int
    b: int
    l: int  # noqa: E741

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise InvalidParams(f"need a >= 2 and b >= 2, got a={self.a}, b={self.b}")
        if not 1 <= self.l <= self.a - 1:
            raise InvalidParams(f"need 1 <= l <= a - 1, got l={self.l} for a={self.a}")

    @property
    def d(self) -> int:
        return self.a * self.b + self.l

    def __str__(self) -> str:
        return f"{self.a}-{self.b}-{self.l}"


def _guard(p: WPSParams) -> None:
    limit = get_settings().max_dim
    if p.d > limit:
        raise DimensionGuard(
            f"d = {p.d} exceeds STRINGY_MAX_DIM = {limit}; only closed forms are available"
        )


def wps_delta(p: WPSParams) -> Polytope:
    """Newton polytope of the family, normalized so its Fine interior is the origin.

    Raises:
        DimensionGuard: If ``d`` exceeds the materialization limit
    """
    _guard(p)
    d, a, b, l = p.d, p.a, p.b, p.l
    points = []
    for height, budget in ((0, a + d), (b + 1, l)):
        points.append((height,) + (0,) * (d - 1))
        for i in range(1, d):
            points.append((height,) + tuple(budget * int(j == i) for j in range(1, d)))
    return hull([tuple(c - 1 for c in pt) for pt in points])


def wps_dual(p: WPSParams) -> Polytope:
    """Mavlyutov dual simplex ``conv{v_0, ..., v_d}`` with ``a v_0 + v_1 + ... + v_d = 0``.

    Raises:
        DimensionGuard: If ``d`` exceeds the materialization limit
    """
    _guard(p)
    d = p.d
    axes = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return hull([*axes, (-p.a,) + (-1,) * (d - 1)], side=Side.N)


def estr_closed_X(p: WPSParams) -> Fraction:
    """Stringy Euler number of the hypersurface from the alternating binomial sum."""
    a, b, l, d = p.a, p.b, p.l, p.d
    total = Fraction((-1) ** (d - 1) * ((a + d) ** d - l**d), a)
    for k in range(1, d):
        term = (
            Fraction(comb(d, k - 1) * l ** (d - k), b)
            + comb(d, k - 1) * (a + d) ** (d - k)
            + Fraction(comb(d, k) * ((a + d) ** (d - k) - l ** (d - k)), a)
        )
        total += (-1) ** (d - 1 - k) * term
    return total


def estr_closed_Xvee(p: WPSParams) -> Fraction:
    """Stringy Euler number of the mirror-side hypersurface."""
    a, d = p.a, p.d
    total = (-1) ** (d - 1) * (a - Fraction(1, a))
    total -= sum((-1) ** i * comb(d, i) * (a + d) ** (d - i - 1) for i in range(1, d - 1))
    total += sum(
        Fraction((-1) ** i * comb(d, i) * (a + d) ** (d - i), a) for i in range(2, d)
    )
    return total


def aggregate_b_terms(p: WPSParams) -> Fraction:
    """Sum of the terms of :func:`estr_closed_X` carrying the denominator ``b``.

    Evaluates ``(-1)^(d-2) / (lb) * ((l-1)^d - (-1)^d - (-1)^(d-1) d l)``, which
    gives ``+16/5`` at ``(3, 5, 2)``; the shorthand ``(1 - d) / b`` has the opposite sign.
    """
    b, l, d = p.b, p.l, p.d
    inner = (l - 1) ** d - (-1) ** d - (-1) ** (d - 1) * d * l
    return (-1) ** (d - 2) * Fraction(inner, l * b)


def wps_local_estr(p: WPSParams) -> Fraction:
    """Local stringy Euler number ``e(D) / b`` at the singular point ``(1:0:...:0)``.

    ``D`` is a smooth degree-``l`` hypersurface of dimension ``d - 2``.
    """
    return smooth_hypersurface_euler(p.d - 2, p.l) / p.b


def wps_quasi_regular(p: WPSParams) -> bool:
    """The singular facet of the dual simplex is quasi-regular: ``e(D) / b == a``."""
    return wps_local_estr(p) == p.a


@dataclass(frozen=True)
class WPSReport:
    params: WPSParams
    estr_x: Fraction
    estr_xvee: Fraction
    aggregate: Fraction
    local_estr: Fraction
    quasi_regular: bool

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def sign(self) -> int:
        return (-1) ** (self.d - 1)

    @property
    def mirror_pass(self) -> bool:
        return self.estr_x == self.sign * self.estr_xvee

    @property
    def x_integral(self) -> bool:
        return self.estr_x.denominator == 1

    @property
    def xvee_integral(self) -> bool:
        return self.estr_xvee.denominator == 1


def integrality_report(p: WPSParams) -> WPSReport:
    """Closed-form stringy Euler numbers, their denominators and the mirror verdict."""
    report = WPSReport(
        params=p,
        estr_x=estr_closed_X(p),
        estr_xvee=estr_closed_Xvee(p),
        aggregate=aggregate_b_terms(p),
        local_estr=wps_local_estr(p),
        quasi_regular=wps_quasi_regular(p),
    )
    logger.debug("WPS %s: e_str(X) = %s, e_str(X^v) = %s", p, report.estr_x, report.estr_xvee)
    return report


_MEMBER = re.compile(r"(\d+)-(\d+)-(\d+)(-dual)?")


def parse_member(member: str) -> tuple[WPSParams, bool]:
    """Parse ``a-b-l`` or ``a-b-l-dual``."""
    match = _MEMBER.fullmatch(member)
    if not match:
        raise InvalidParams(f"expected a member of the form a-b-l or a-b-l-dual, got {member!r}")
    a, b, l = (int(match.group(i)) for i in range(1, 4))
    return WPSParams(a, b, l), match.group(4) is not None


class WeightedProjectiveFamily(PolytopeFamily):
    """Hypersurfaces of degree ``a + d`` in ``P(a, 1^d)`` and their Mavlyutov duals."""

    @property
    def name(self) -> str:
        return "wps"

    @property
    def display_name(self) -> str:
        return "Hypersurfaces in P(a,1,...,1)"

    def members(self) -> list[str]:
        return ["2-2-1", "2-2-1-dual", "2-3-1", "3-2-1", "3-2-2"]

    def build(self, member: str) -> Polytope:
        params, dual = parse_member(member)
        return wps_dual(params) if dual else wps_delta(params)

    def describe(self, member: str) -> str:
        params, dual = parse_member(member)
        side = "Mavlyutov dual simplex" if dual else "Newton polytope"
        return f"{side} for a={params.a}, b={params.b}, l={params.l} (d={params.d})"
