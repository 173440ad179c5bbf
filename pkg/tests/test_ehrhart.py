"""Tests for normalized volumes, h*-vectors and face polynomials."""

import random
from fractions import Fraction

import pytest

from stringy_engine.ehrhart import e_theta, hstar, normalized_volume
from stringy_engine.errors import NonLatticeVertices, ZeroDimensionalFace
from stringy_engine.genfun import poly_coefficients
from stringy_engine.lattice_points import count_dilation, interior_points
from stringy_engine.polytope import hull


class TestNormalizedVolume:
    """Tests for lattice-normalized volumes."""

    def test_small_polygons(self, unit_square, reflexive_triangle):
        """Test the square, the reflexive triangle and the standard triangle."""
        assert normalized_volume(unit_square) == 2
        assert normalized_volume(reflexive_triangle) == 3
        assert normalized_volume(hull([(0, 0), (1, 0), (0, 1)])) == 1

    def test_point_and_segments(self):
        """Test points and lattice lengths of segments."""
        assert normalized_volume(hull([(2, 5)])) == 1
        assert normalized_volume(hull([(0, 0), (3, 0)])) == 3
        assert normalized_volume(hull([(0, 0), (2, 2)])) == 2

    def test_lower_dimensional_face(self):
        """Test a triangle in a plane of R^3 measured in its own lattice."""
        triangle = hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert normalized_volume(triangle) == 1

    def test_rational(self):
        """Test a triangle with a fractional vertex."""
        assert normalized_volume(hull([(0, 0), (1, 0), (0, Fraction(1, 2))])) == Fraction(1, 2)

    def test_quintic_slabs(self, quint1, quint2):
        """Test the volumes 5^4 - 1 and 5^4 - 2^4."""
        assert normalized_volume(quint1) == 624
        assert normalized_volume(quint2) == 609


class TestHStar:
    """Tests for h*-vectors."""

    def test_square_and_triangle(self, unit_square, reflexive_triangle):
        """Test two polygons with known h*-vectors."""
        assert hstar(unit_square).psi == (1, 1, 0)
        assert hstar(reflexive_triangle).psi == (1, 1, 1)

    def test_reeve_tetrahedron(self):
        """Test the empty tetrahedron with h* = (1, 0, 2, 0)."""
        reeve = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 3)])
        h = hstar(reeve)
        assert h.psi == (1, 0, 2, 0)
        assert h.volume == 3

    def test_volume_agrees(self):
        """Test that the h*-vector sums to the normalized volume on random polytopes."""
        rng = random.Random(3)
        for _ in range(10):
            p = hull([tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(5)])
            if p.dim != 3:
                continue
            h = hstar(p)
            assert h.volume == normalized_volume(p)
            assert h.psi[1] == count_dilation(p, 1) - 4

    @pytest.mark.slow
    def test_random_corpus(self):
        """Test psi_0 = 1, psi_i >= 0 and sum psi = v on 200 random polytopes of dimension 2 to 4."""
        rng = random.Random(200)
        checked = 0
        while checked < 200:
            d = rng.randint(2, 4)
            radius = 2 if d < 4 else 1
            count = d + rng.randint(1, 4)
            p = hull([tuple(rng.randint(-radius, radius) for _ in range(d)) for _ in range(count)])
            if p.dim != d:
                continue
            h = hstar(p)
            assert len(h.psi) == d + 1
            assert h.psi[0] == 1
            assert all(c >= 0 for c in h.psi)
            assert h.volume == normalized_volume(p)
            assert h.psi[1] == count_dilation(p, 1) - d - 1
            assert h.psi[d] == len(interior_points(p))
            checked += 1

    def test_non_lattice(self):
        """Test that h*-vectors need integer vertices."""
        with pytest.raises(NonLatticeVertices):
            hstar(hull([(0, 0), (Fraction(1, 2), 0), (0, 1)]))


class TestETheta:
    """Tests for the face polynomial E(Θ, u)."""

    def test_unit_square(self, unit_square):
        """Test E = u - 3 for the unit square."""
        assert poly_coefficients(e_theta(unit_square)) == [-3, 1]

    def test_segment(self):
        """Test that a segment of lattice length n gives the constant n."""
        assert poly_coefficients(e_theta(hull([(0, 0), (4, 0)]))) == [4]

    def test_reflexive_triangle(self, reflexive_triangle):
        """Test that the linear terms cancel for the reflexive triangle."""
        assert poly_coefficients(e_theta(reflexive_triangle)) == [-3]

    def test_point(self):
        """Test that points have no face polynomial."""
        with pytest.raises(ZeroDimensionalFace):
            e_theta(hull([(0, 0)]))
