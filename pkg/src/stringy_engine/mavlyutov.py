"""Mavlyutov duality and the regular/singular/ordinary classification of faces."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from stringy_engine.errors import SingularFace
from stringy_engine.fine_interior import normalize
from stringy_engine.lattice_points import lattice_hull, points_in
from stringy_engine.linalg import dot, lattice_basis_of_span
from stringy_engine.polytope import EMPTY, Face, Polytope, dual_face, hull, polar

logger = logging.getLogger(__name__)


def mav_dual(delta: Polytope) -> Polytope:
    """Mavlyutov dual ``[Δ*]`` of the normalized polytope."""
    return lattice_hull(polar(normalize(delta)))


def pseudoreflexive_closure(delta: Polytope) -> Polytope:
    """Smallest pseudoreflexive polytope ``[[Δ*]*]`` containing the normalized ``delta``."""
    return lattice_hull(polar(mav_dual(delta)))


class FaceKind(Enum):
    REGULAR = "regular"
    SINGULAR = "singular"


@dataclass(frozen=True)
class FaceClass:
    """Classification of a proper face of a normalized polytope.

    Attributes:
        face: Index of the face in the polytope's face lattice
        dim: Dimension of the face
        kind: Regular when ``dim [Θ*] = d - dim Θ - 1``
        ordinary: Every lattice point of the cone over the face lies in an integer dilate
        facet_distance: Integral distance from the origin, for facets only
        dual_empty: ``[Θ*]`` has no lattice points
        height_bound: Dilation height a brute-force recheck of ``ordinary`` enumerates to
    """

    face: int
    dim: int
    kind: FaceKind
    ordinary: bool
    facet_distance: int | None
    dual_empty: bool
    height_bound: int

    @property
    def is_regular(self) -> bool:
        return self.kind is FaceKind.REGULAR


def _height_form(delta: Polytope, face: Face) -> tuple[tuple[int, ...], Fraction]:
    facet = delta.facets[min(face.facets)]
    return facet.normal, facet.offset


def _is_ordinary(delta: Polytope, face: Face) -> bool:
    normal, offset = _height_form(delta, face)
    basis = lattice_basis_of_span(delta.face_vertices(face))
    return all((Fraction(dot(b, normal)) / offset).denominator == 1 for b in basis)


def height_bound(delta: Polytope) -> int:
    """Default dilation height ``(d + 1) * max facet distance`` for ordinary rechecks."""
    return (delta.dim + 1) * max(int(-f.offset) for f in delta.facets)


def face_class(delta: Polytope, face: Face) -> FaceClass:
    """Classify a proper face of ``delta`` after normalization.

    Face indices are shared between ``delta`` and its normalized translate.
    """
    delta = normalize(delta)
    if not face.facets:
        raise ValueError("the polytope itself is not a proper face")
    d = delta.dim
    dual = lattice_hull(dual_face(delta, face))
    if dual is EMPTY:
        kind = FaceKind.SINGULAR
    else:
        kind = FaceKind.REGULAR if dual.dim == d - face.dim - 1 else FaceKind.SINGULAR
    distance = None
    if face.dim == d - 1:
        distance = int(-delta.facets[min(face.facets)].offset)
    return FaceClass(
        face=face.index,
        dim=face.dim,
        kind=kind,
        ordinary=_is_ordinary(delta, face),
        facet_distance=distance,
        dual_empty=dual is EMPTY,
        height_bound=height_bound(delta),
    )


def classify_faces(delta: Polytope) -> list[FaceClass]:
    """Classes of all proper faces, in face-lattice order."""
    normalized = normalize(delta)
    return [face_class(normalized, f) for f in normalized.faces.proper()]


def ordinary_by_enumeration(delta: Polytope, face: Face, height: int | None = None) -> bool:
    """Recheck the ordinary property by enumerating the cone over ``face`` up to ``height``."""
    delta = normalize(delta)
    if height is None:
        height = height_bound(delta)
    normal, offset = _height_form(delta, face)
    apex = (0,) * delta.ambient_dim
    truncated = hull([apex, *(v * height for v in delta.face_vertices(face))])
    for x in points_in(truncated):
        if (Fraction(dot(x, normal)) / offset).denominator != 1:
            logger.debug("lattice point %s of the cone lies between dilates", x)
            return False
    return True


def face_dual(delta: Polytope, face: Face) -> Face:
    """Face ``[Θ*]`` of the Mavlyutov dual paired with the regular face ``face``.

    Raises:
        SingularFace: If ``face`` is not regular
    """
    cls = face_class(delta, face)
    if not cls.is_regular:
        raise SingularFace(f"face {face.index} of dimension {face.dim} is singular")
    normalized = normalize(delta)
    dual = lattice_hull(dual_face(normalized, face))
    target = mav_dual(normalized)
    index = {v: i for i, v in enumerate(target.vertices)}
    indices = [index.get(v) for v in dual.vertices]
    found = None if None in indices else target.faces.find(indices)
    if found is None:
        raise RuntimeError(f"[Θ*] of face {face.index} is not a face of the Mavlyutov dual")
    return found
