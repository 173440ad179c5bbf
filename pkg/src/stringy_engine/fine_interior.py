"""Fine interior, canonical hull and the Calabi-Yau classification of lattice polytopes."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from stringy_engine.errors import (
    EmptyFineInterior,
    NonLatticeVertices,
    NotFullDimensional,
    NotNormalized,
    ZeroVectorError,
)
from stringy_engine.lattice_points import hilbert_basis, lattice_hull, points_in
from stringy_engine.linalg import IntVector, RationalVector
from stringy_engine.polytope import (
    ABSENT,
    EMPTY,
    Marker,
    Polytope,
    hull,
    normal_cone,
    polar,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FineResult:
    """Fine interior of a lattice polytope with its support and canonical hull.

    Attributes:
        interior: The Fine interior, or ``EMPTY``
        support: Lattice directions on which the Fine interior is tight, sorted
        canonical_hull: The canonical hull, or ``ABSENT`` when the interior is empty
        translation: Shift moving a single-lattice-point interior to the origin
        cut_set: Directions whose half-spaces cut out the interior
    """

    interior: Polytope | Marker
    support: tuple[IntVector, ...]
    canonical_hull: Polytope | Marker
    translation: IntVector | None
    cut_set: tuple[IntVector, ...]

    @property
    def is_empty(self) -> bool:
        return self.interior is EMPTY


class Verdict(Enum):
    """Calabi-Yau classes, weakest first."""

    NO_MINIMAL_MODEL = "NoMinimalModel"
    MINIMAL_NOT_CY = "MinimalNotCY"
    ALMOST_PSEUDOREFLEXIVE = "AlmostPseudoreflexive"
    PSEUDOREFLEXIVE = "Pseudoreflexive"
    REFLEXIVE = "Reflexive"

    @property
    def rank(self) -> int:
        return list(Verdict).index(self)

    def at_least(self, other: "Verdict") -> bool:
        return self.rank >= other.rank


@dataclass(frozen=True)
class CYClass:
    """Strongest Calabi-Yau class of a lattice polytope.

    ``normalized`` and ``closure`` are set only from AlmostPseudoreflexive up.
    ``closure`` is the pseudoreflexive closure ``[[Δ*]*]`` of the normalized
    polytope; ``almost_reflexive`` says that closure is reflexive.
    """

    verdict: Verdict
    fine: FineResult
    translation: IntVector | None
    normalized: Polytope | None
    interior_dim: int
    almost_reflexive: bool = False
    closure: Polytope | None = None

    @property
    def is_almost_pseudoreflexive(self) -> bool:
        return self.verdict.at_least(Verdict.ALMOST_PSEUDOREFLEXIVE)

    @property
    def is_pseudoreflexive(self) -> bool:
        return self.verdict.at_least(Verdict.PSEUDOREFLEXIVE)

    @property
    def is_reflexive(self) -> bool:
        return self.verdict is Verdict.REFLEXIVE


def _check_input(delta: Polytope) -> None:
    if not delta.is_full_dimensional:
        raise NotFullDimensional(f"expected a full-dimensional polytope, got dim {delta.dim}")
    if not delta.is_lattice:
        raise NonLatticeVertices("expected a lattice polytope")


def cut_directions(delta: Polytope) -> list[IntVector]:
    """Union of the Hilbert bases of the vertex normal cones of ``delta``.

    Facet normals come first so the first cuts remove the most.
    """
    facet_normals = [f.normal for f in delta.facets]
    seen = set(facet_normals)
    extra: set[IntVector] = set()
    for face in delta.faces.of_dim(0):
        extra.update(hilbert_basis(normal_cone(delta, face)))
    return facet_normals + sorted(extra - seen)


def _support(delta: Polytope, interior: Polytope) -> list[IntVector]:
    found: set[IntVector] = set()
    for x in interior.vertices:
        shifted = polar(delta.translate(-x))
        found.update(pt for pt in points_in(shifted) if any(pt))
    return sorted(found)


def _canonical_hull(
    delta: Polytope, interior: Polytope, support: list[IntVector]
) -> Polytope | Marker:
    center = interior.centroid()
    points = [(0,) * delta.ambient_dim]
    for n in support:
        gap = delta.ord(n) - center.dot(n)
        points.append(RationalVector(n) / -gap)
    directions = hull(points, side=delta.side.dual)
    if not _origin_interior(directions):
        # the support does not positively span N_R: the intersection is unbounded
        logger.debug("canonical hull of %r is unbounded", delta)
        return ABSENT
    return polar(directions).translate(center)


@lru_cache(maxsize=256)
def fine(delta: Polytope) -> FineResult:
    """Fine interior of a full-dimensional lattice polytope.

    The interior is the intersection of the half-spaces
    ``<x, n> >= ord(n) + 1`` over the Hilbert bases of all vertex normal cones.

    Raises:
        NotFullDimensional: If ``delta`` is lower-dimensional
        NonLatticeVertices: If a vertex is not integral
    """
    _check_input(delta)
    cuts = cut_directions(delta)
    current: Polytope | Marker = delta
    for n in cuts:
        current = current.cut(n, delta.ord(n) + 1)
        if current is EMPTY:
            break
    logger.debug("Fine interior from %d cut directions: %r", len(cuts), current)

    if current is EMPTY:
        return FineResult(EMPTY, (), ABSENT, None, tuple(cuts))

    support = _support(delta, current)
    canonical = _canonical_hull(delta, current, support)
    translation = None
    if current.dim == 0 and current.is_lattice:
        translation = tuple(-c for c in current.vertices[0].to_ints())
    return FineResult(current, tuple(support), canonical, translation, tuple(cuts))


def canonical_hull(delta: Polytope) -> Polytope | Marker:
    """Canonical hull of ``delta``, or ``ABSENT`` when it is unbounded.

    Raises:
        EmptyFineInterior: If the Fine interior is empty
    """
    result = fine(delta)
    if result.is_empty:
        raise EmptyFineInterior("the canonical hull needs a nonempty Fine interior")
    return result.canonical_hull


@lru_cache(maxsize=256)
def classify(delta: Polytope) -> CYClass:
    """Decide the strongest Calabi-Yau class of a lattice polytope."""
    result = fine(delta)
    if result.is_empty:
        return CYClass(Verdict.NO_MINIMAL_MODEL, result, None, None, -1)
    interior = result.interior
    if result.translation is None:
        return CYClass(Verdict.MINIMAL_NOT_CY, result, None, None, interior.dim)

    normalized = delta.translate(result.translation)
    dual = polar(normalized)
    mav = lattice_hull(dual)
    closure = lattice_hull(polar(mav))
    almost_reflexive = polar(closure).is_lattice
    if dual.is_lattice:
        verdict = Verdict.REFLEXIVE
    elif closure == normalized:
        verdict = Verdict.PSEUDOREFLEXIVE
    else:
        verdict = Verdict.ALMOST_PSEUDOREFLEXIVE
    logger.debug("classified %r as %s", delta, verdict.value)
    return CYClass(
        verdict, result, result.translation, normalized, 0, almost_reflexive, closure
    )


def normalize(delta: Polytope, error: type[NotNormalized] = NotNormalized) -> Polytope:
    """Translate ``delta`` so that its Fine interior is the origin.

    Raises:
        NotNormalized: If the Fine interior is not a single lattice point
    """
    cls = classify(delta)
    if not cls.is_almost_pseudoreflexive:
        raise error(f"Fine interior is not a single lattice point ({cls.verdict.value})")
    return cls.normalized


def _is_normalized(delta: Polytope) -> bool:
    cls = classify(delta)
    return cls.is_almost_pseudoreflexive and not any(cls.translation)


def discrepancy(delta: Polytope, n) -> Fraction:
    """Discrepancy ``-ord(n) - 1`` of the divisor for the lattice direction ``n``.

    Raises:
        NotNormalized: If the Fine interior of ``delta`` is not the origin
        ZeroVectorError: If ``n`` is zero
    """
    if not any(n):
        raise ZeroVectorError("discrepancy needs a nonzero direction")
    if not _is_normalized(delta):
        raise NotNormalized("discrepancies are defined for origin-normalized polytopes")
    return -delta.ord(n) - 1


@dataclass(frozen=True)
class FI0Check:
    """Three equivalent characterizations of ``Δ^FI = {0}``, evaluated independently."""

    fine_is_origin: bool
    dual_hull_interior: bool
    inside_pseudoreflexive: bool

    @property
    def consistent(self) -> bool:
        return self.fine_is_origin == self.dual_hull_interior == self.inside_pseudoreflexive


def _origin_interior(p: Polytope | Marker) -> bool:
    if p is EMPTY or not p.is_full_dimensional:
        return False
    return p.interior_contains((0,) * p.ambient_dim)


def fi0_equivalence(delta: Polytope) -> FI0Check:
    """Evaluate the three conditions equivalent to ``Δ^FI = {0}``.

    The Fine-interior side uses :func:`fine`; the other two only use polars
    and lattice hulls.
    """
    _check_input(delta)
    result = fine(delta)
    origin = (0,) * delta.ambient_dim
    fine_is_origin = (
        not result.is_empty
        and result.interior.dim == 0
        and result.interior.vertices[0] == origin
    )

    dual_hull_interior = False
    inside = False
    if _origin_interior(delta):
        mav = lattice_hull(polar(delta))
        dual_hull_interior = _origin_interior(mav)
        if dual_hull_interior:
            closure = lattice_hull(polar(mav))
            again = lattice_hull(polar(lattice_hull(polar(closure))))
            inside = closure == again and all(closure.contains(v) for v in delta.vertices)
    return FI0Check(fine_is_origin, dual_hull_interior, inside)
