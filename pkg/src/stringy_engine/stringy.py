"""Stringy E-functions and stringy Euler numbers of Calabi-Yau hypersurfaces.

Three independent formulas compute the stringy Euler number of a
normalized polytope: the general face sum over normal-cone volumes, the
reflexive face-duality sum and the regular/singular face sum. Each runs its
own loop over the face lattice so that agreement between them is a real
cross-check.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ, Poly

from stringy_engine.ehrhart import e_theta, normalized_volume
from stringy_engine.errors import (
    NotAlmostPseudoreflexive,
    NotPseudoreflexive,
    NotReflexive,
)
from stringy_engine.fine_interior import CYClass, classify, normalize
from stringy_engine.genfun import U, RationalFunctionUQ, r_cone
from stringy_engine.lattice_points import lattice_hull
from stringy_engine.linalg import RationalVector
from stringy_engine.mavlyutov import face_class, mav_dual
from stringy_engine.polytope import Face, Polytope, dual_face, hull, normal_cone

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceTerm:
    """Contribution ``(-1)^(dim-1) * v(Θ) * v(σ^Θ ∩ Δ*)`` of one face."""

    face: int
    dim: int
    volume: Fraction
    cone_volume: Fraction
    contribution: Fraction


def _cone_slice(delta: Polytope, face: Face) -> Polytope:
    """``σ^Θ ∩ Δ*`` as the hull of 0 and the scaled facet normals around ``face``."""
    origin = (0,) * delta.ambient_dim
    points = [origin]
    for j in sorted(face.facets):
        f = delta.facets[j]
        points.append(RationalVector(f.normal) / -f.offset)
    return hull(points, side=delta.side.dual)


def face_terms(delta: Polytope) -> list[FaceTerm]:
    """Per-face terms of the general stringy Euler number formula.

    Raises:
        NotAlmostPseudoreflexive: If the Fine interior is not a single lattice point
    """
    delta = normalize(delta, NotAlmostPseudoreflexive)
    terms = []
    for face in delta.faces:
        if face.dim < 1:
            continue
        volume = normalized_volume(delta.face_polytope(face))
        if face.facets:
            cone_volume = normalized_volume(_cone_slice(delta, face))
        else:
            cone_volume = Fraction(1)
        sign = (-1) ** (face.dim - 1)
        terms.append(FaceTerm(face.index, face.dim, volume, cone_volume, sign * volume * cone_volume))
    logger.debug("collected %d face terms", len(terms))
    return terms


def estr_general(delta: Polytope) -> Fraction:
    """Stringy Euler number of the Calabi-Yau model of an almost pseudoreflexive polytope."""
    return sum((t.contribution for t in face_terms(delta)), Fraction(0))


def efun_u(delta: Polytope) -> RationalFunctionUQ:
    """Stringy E-function ``E_st(X; u, 1)`` as an exact rational function of ``u``.

    Raises:
        NotAlmostPseudoreflexive: If the Fine interior is not a single lattice point
    """
    delta = normalize(delta, NotAlmostPseudoreflexive)
    d = delta.dim
    one_minus_u = RationalFunctionUQ(Poly(1 - U, U, domain=QQ))
    total = RationalFunctionUQ(0)
    for face in delta.faces:
        if face.dim < 1:
            continue
        m = delta.face_vertices(face)[0].to_ints()
        series = r_cone(normal_cone(delta, face), [-c for c in m])
        e_face = RationalFunctionUQ(e_theta(delta.face_polytope(face)))
        total = total + e_face * series * one_minus_u ** (d - face.dim)
    return total


def stringy_symmetric(efun: RationalFunctionUQ, d: int) -> bool:
    """Check ``u^(d-1) E(1/u) == E(u)``."""
    return efun.invert_variable().shift(d - 1) == efun


def estr_reflexive(delta: Polytope) -> Fraction:
    """Stringy Euler number of a reflexive polytope from polar dual faces.

    Raises:
        NotReflexive: If the polar of the normalized polytope is not a lattice polytope
    """
    cls = classify(delta)
    if not cls.is_reflexive:
        raise NotReflexive(f"expected a reflexive polytope ({cls.verdict.value})")
    delta = cls.normalized
    d = delta.dim
    total = Fraction(0)
    for k in range(1, d - 1):
        for face in delta.faces.of_dim(k):
            volume = normalized_volume(delta.face_polytope(face))
            total += (-1) ** (k - 1) * volume * normalized_volume(dual_face(delta, face))
    return total


def _require_pseudoreflexive(delta: Polytope) -> Polytope:
    cls = classify(delta)
    if not cls.is_pseudoreflexive:
        raise NotPseudoreflexive(f"expected a pseudoreflexive polytope ({cls.verdict.value})")
    return cls.normalized


def _singular_facet_sum(delta: Polytope) -> Fraction:
    total = Fraction(0)
    for face in delta.faces.of_dim(delta.dim - 1):
        cls = face_class(delta, face)
        if not cls.is_regular:
            total += cls.facet_distance * normalized_volume(delta.face_polytope(face))
    return total


def _regular_face_sum(delta: Polytope) -> Fraction:
    total = Fraction(0)
    for k in range(1, delta.dim - 1):
        for face in delta.faces.of_dim(k):
            if not face_class(delta, face).is_regular:
                continue
            volume = normalized_volume(delta.face_polytope(face))
            partner = lattice_hull(dual_face(delta, face))
            total += (-1) ** (k - 1) * volume * normalized_volume(partner)
    return total


def estr_cond(delta: Polytope) -> Fraction:
    """Stringy Euler number from regular faces and singular facets of both duals.

    Valid when every singular facet is quasi-regular.

    Raises:
        NotPseudoreflexive: If ``delta`` is not pseudoreflexive
    """
    delta = _require_pseudoreflexive(delta)
    dual = mav_dual(delta)
    d = delta.dim
    return (
        _singular_facet_sum(dual)
        + _regular_face_sum(delta)
        + (-1) ** (d - 1) * _singular_facet_sum(delta)
    )


@dataclass(frozen=True)
class MirrorReport:
    estr: Fraction
    estr_dual: Fraction
    sign: int

    @property
    def passed(self) -> bool:
        return self.estr == self.sign * self.estr_dual


def mirror_test(delta: Polytope) -> MirrorReport:
    """Compare ``e_str(Δ)`` with ``(-1)^(d-1) e_str(Δ^∨)``.

    Raises:
        NotPseudoreflexive: If ``delta`` is not pseudoreflexive
    """
    delta = _require_pseudoreflexive(delta)
    return MirrorReport(
        estr_general(delta), estr_general(mav_dual(delta)), (-1) ** (delta.dim - 1)
    )


@dataclass(frozen=True)
class SingularFacet:
    face: int
    distance: int
    volume: Fraction

    @property
    def weight(self) -> Fraction:
        return self.distance * self.volume


@dataclass(frozen=True)
class QuasiRegularReport:
    """Singular facets of a polytope and the residual measured on its dual.

    ``residual`` is ``e_str(Δ^∨)`` minus the regular-face sum and the signed
    singular-facet sum of ``Δ^∨``. It is the sum of the local stringy Euler
    numbers at the singular facets of ``Δ``, and the local number itself when
    there is exactly one.
    """

    singular_facets: tuple[SingularFacet, ...]
    residual: Fraction

    @property
    def local_estr(self) -> Fraction | None:
        if len(self.singular_facets) != 1:
            return None
        return self.residual

    @property
    def quasi_regular(self) -> bool | None:
        """Whether the unique singular facet is quasi-regular; None otherwise."""
        if not self.singular_facets:
            return True
        if len(self.singular_facets) != 1:
            return None
        return self.residual == self.singular_facets[0].weight

    @property
    def consistent(self) -> bool:
        """The residual equals the total weight of the singular facets."""
        return self.residual == sum((s.weight for s in self.singular_facets), Fraction(0))


def quasi_regular_report(delta: Polytope) -> QuasiRegularReport:
    """Singular facets of ``delta`` with the aggregate residual computed on ``Δ^∨``."""
    delta = _require_pseudoreflexive(delta)
    facets = []
    for face in delta.faces.of_dim(delta.dim - 1):
        cls = face_class(delta, face)
        if not cls.is_regular:
            volume = normalized_volume(delta.face_polytope(face))
            facets.append(SingularFacet(face.index, cls.facet_distance, volume))
    dual = mav_dual(delta)
    d = delta.dim
    residual = (
        estr_general(dual)
        - _regular_face_sum(dual)
        - (-1) ** (d - 1) * _singular_facet_sum(dual)
    )
    return QuasiRegularReport(tuple(facets), residual)


@dataclass(frozen=True)
class StringyReport:
    """Everything the engine knows about the stringy invariants of one polytope."""

    name: str
    classification: CYClass
    estr: Fraction
    face_terms: tuple[FaceTerm, ...]
    efun: RationalFunctionUQ | None
    symmetry_ok: bool | None
    is_polynomial: bool | None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def is_integral(self) -> bool:
        return self.estr.denominator == 1

    @property
    def denominator(self) -> int:
        return self.estr.denominator


def stringy_report(
    delta: Polytope, name: str = "", with_efun: bool = True, check: bool = False
) -> StringyReport:
    """Stringy Euler number, face table and E-function of one polytope.

    Args:
        delta: Almost pseudoreflexive lattice polytope
        name: Label carried into the report
        with_efun: Also compute the E-function and its symmetry
        check: Run the cross-formula agreement checks that apply

    Returns:
        The assembled report

    Raises:
        NotAlmostPseudoreflexive: If the Fine interior is not a single lattice point
    """
    terms = face_terms(delta)
    cls = classify(delta)
    estr = sum((t.contribution for t in terms), Fraction(0))
    efun = symmetric = polynomial = None
    if with_efun:
        efun = efun_u(delta)
        symmetric = stringy_symmetric(efun, delta.dim)
        polynomial = efun.is_polynomial

    checks: dict[str, bool] = {}
    if check:
        if efun is not None:
            # efun is reduced, so a finite limit at 1 is its value there
            checks["efun_limit"] = efun.evaluate(1) == estr
        checks["pyramid"] = pyramid_identity(delta)
        if cls.is_reflexive:
            checks["reflexive_formula"] = estr_reflexive(delta) == estr
        if cls.is_pseudoreflexive:
            checks["mirror"] = mirror_test(delta).passed
    return StringyReport(name, cls, estr, tuple(terms), efun, symmetric, polynomial, checks)


def pyramid_identity(delta: Polytope) -> bool:
    """Check ``v(Δ) == sum of n_Θ * v(Θ)`` over the facets of the normalized polytope."""
    delta = normalize(delta)
    total = Fraction(0)
    for face in delta.faces.of_dim(delta.dim - 1):
        distance = -delta.facets[min(face.facets)].offset
        total += distance * normalized_volume(delta.face_polytope(face))
    return total == normalized_volume(delta)


def isolated_singularity_estr(e_resolution, e_divisor, discrepancy) -> Fraction:
    """``e(Y) - e(D) * a / (a + 1)`` for a resolution with one exceptional divisor."""
    a = Fraction(discrepancy)
    return Fraction(e_resolution) - Fraction(e_divisor) * a / (a + 1)


def smooth_hypersurface_euler(dim: int, degree: int) -> Fraction:
    """Euler number of a smooth degree-``degree`` hypersurface of dimension ``dim``."""
    if dim < 0 or degree < 1:
        raise ValueError("dimension must be nonnegative and degree positive")
    return Fraction((1 - degree) ** (dim + 2) - 1, degree) + dim + 2


def quadric_point_local_estr(d: int) -> Fraction:
    """Local stringy Euler number of a quadratic point on a d-dimensional hypersurface."""
    if d < 2:
        raise ValueError("the hypersurface dimension must be at least 2")
    return smooth_hypersurface_euler(d - 1, 2) / (d - 1)
