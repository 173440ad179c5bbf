"""Normalized volumes, h*-vectors and face polynomials E(Θ, u)."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy import Poly

from stringy_engine.errors import NonLatticeVertices, ZeroDimensionalFace
from stringy_engine.genfun import poly_from_coefficients
from stringy_engine.lattice_points import count_dilation
from stringy_engine.linalg import coordinates_in, determinant, lattice_basis_of_span
from stringy_engine.polytope import Polytope, pulling_triangulation

logger = logging.getLogger(__name__)


def normalized_volume(p: Polytope) -> Fraction:
    """Lattice-normalized volume ``dim! * Vol`` of a rational polytope.

    Volumes are measured against the lattice ``Z^d`` intersected with the
    linear span of ``p - p.vertices[0]``. A point has volume 1.

    Args:
        p: Nonempty polytope, lattice or rational

    Returns:
        The normalized volume as an exact rational
    """
    if p.dim == 0:
        return Fraction(1)
    anchor = p.vertices[0]
    basis = lattice_basis_of_span([v - anchor for v in p.vertices[1:]])
    total = Fraction(0)
    for simplex in pulling_triangulation(p):
        base = p.vertices[simplex[0]]
        rows = [coordinates_in(basis, p.vertices[i] - base) for i in simplex[1:]]
        total += abs(determinant(rows))
    return total


@dataclass(frozen=True)
class HStarVector:
    """Numerator ``psi_0 + psi_1 t + ... + psi_k t^k`` of the Ehrhart series."""

    k: int
    psi: tuple[int, ...]

    @property
    def volume(self) -> int:
        return sum(self.psi)


def hstar(p: Polytope) -> HStarVector:
    """h*-vector of a lattice polytope from finite differences of dilation counts.

    Raises:
        NonLatticeVertices: If a vertex is not integral
    """
    if not p.is_lattice:
        raise NonLatticeVertices("h*-vectors need integer vertices")
    k = p.dim
    counts = [count_dilation(p, l) for l in range(k + 1)]
    psi = tuple(
        sum((-1) ** i * comb(k + 1, i) * counts[j - i] for i in range(j + 1))
        for j in range(k + 1)
    )
    if psi[0] != 1 or any(c < 0 for c in psi):
        raise RuntimeError(f"inconsistent h*-vector {psi} for {p!r}")
    logger.debug("h* of a %d-dimensional polytope: %s", k, psi)
    return HStarVector(k, psi)


def e_theta(p: Polytope) -> Poly:
    """Face polynomial ``((u-1)^k - (-1)^k)/u + (-1)^(k-1) sum_{i>=1} psi_i u^(i-1)``.

    Raises:
        ZeroDimensionalFace: If ``p`` is a point
    """
    k = p.dim
    if k == 0:
        raise ZeroDimensionalFace("E(Θ, u) needs a face of dimension at least 1")
    psi = hstar(p).psi
    sign = (-1) ** (k - 1)
    coefficients = [
        comb(k, j) * (-1) ** (k - j) + sign * psi[j] for j in range(1, k + 1)
    ]
    return poly_from_coefficients(coefficients)
