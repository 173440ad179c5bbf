"""Tests for stringy E-functions and stringy Euler numbers."""

from fractions import Fraction

import pytest

from stringy_engine.errors import NotAlmostPseudoreflexive, NotPseudoreflexive, NotReflexive
from stringy_engine.families.named import NamedExamples
from stringy_engine.families.quintic import quadric_point, slab
from stringy_engine.families.reflexive import (
    cross_polytope,
    cube,
    reflexive_polygons,
    reflexive_simplex,
)
from stringy_engine.families.wps import WPSParams, estr_closed_X, integrality_report, wps_delta
from stringy_engine.stringy import (
    efun_u,
    estr_cond,
    estr_general,
    estr_reflexive,
    face_terms,
    isolated_singularity_estr,
    mirror_test,
    pyramid_identity,
    quadric_point_local_estr,
    quasi_regular_report,
    smooth_hypersurface_euler,
    stringy_report,
    stringy_symmetric,
)

NAMED = NamedExamples()


class TestEstrGeneral:
    """Tests for the general face-sum formula."""

    def test_quintics(self, quint1, quintic_simplex):
        """Test that both quintic Newton polytopes give -200."""
        assert estr_general(quintic_simplex) == -200
        assert estr_general(quint1) == -200

    def test_conifold_quintic(self, quint2):
        """Test that one double point raises the Euler number by two."""
        assert estr_general(quint2) == -198

    def test_k3(self, quartic_simplex):
        """Test the quartic surface and the cube."""
        assert estr_general(quartic_simplex) == 24
        assert estr_general(cube(3)) == 24
        assert estr_general(cross_polytope(3)) == 24

    def test_elliptic_curves(self):
        """Test that every reflexive polygon gives zero."""
        for polygon in reflexive_polygons():
            assert estr_general(polygon) == 0
        assert estr_general(slab(2, 0, 3)) == 0

    def test_translation_invariant(self, quint1):
        """Test that the input does not need to be normalized."""
        assert estr_general(quint1.translate((3, -2, 0, 7))) == -200

    def test_rejects_empty_fine_interior(self):
        """Test polytopes without a lattice-point Fine interior."""
        with pytest.raises(NotAlmostPseudoreflexive):
            estr_general(NAMED.build("empty-fine-triangle"))
        with pytest.raises(NotAlmostPseudoreflexive):
            estr_general(NAMED.build("corti-golyshev"))

    @pytest.mark.slow
    def test_quadratic_point(self):
        """Test the fractional part -8/3 of a fourfold with a quadratic point."""
        estr = estr_general(quadric_point(4))
        assert (estr + Fraction(8, 3)).denominator == 1


class TestFaceTerms:
    """Tests for the per-face table."""

    def test_reflexive_triangle(self, reflexive_triangle):
        """Test the three edges and the polygon itself."""
        terms = face_terms(reflexive_triangle)
        edges = [t for t in terms if t.dim == 1]
        top = [t for t in terms if t.dim == 2]
        assert len(edges) == 3
        assert all(t.volume == 1 and t.cone_volume == 1 and t.contribution == 1 for t in edges)
        assert [t.contribution for t in top] == [-3]

    def test_quint2_facet_volumes(self, quint2):
        """Test the facet volumes 8, 4 x 117 and 125 of the conifold slab."""
        facets = sorted(t.volume for t in face_terms(quint2) if t.dim == 3)
        assert facets == [8, 117, 117, 117, 117, 125]

    def test_every_positive_dimensional_face(self, quint1):
        """Test that the table has one row per face of positive dimension."""
        assert len(face_terms(quint1)) == 16 + 14 + 6 + 1


class TestEstrReflexive:
    """Tests for the reflexive duality formula."""

    def test_agrees_with_general(self, quintic_simplex, quartic_simplex):
        """Test agreement on reflexive simplices, cubes and cross-polytopes."""
        for delta in (
            quintic_simplex,
            quartic_simplex,
            reflexive_simplex(3),
            reflexive_simplex(4),
            cube(3),
            cross_polytope(3),
        ):
            assert estr_reflexive(delta) == estr_general(delta)

    def test_mirror_quintic(self):
        """Test the mirror quintic simplex."""
        assert estr_reflexive(reflexive_simplex(4)) == 200

    def test_polygons(self):
        """Test that the formula has no terms in dimension two."""
        for polygon in reflexive_polygons():
            assert estr_reflexive(polygon) == 0

    def test_rejects_non_reflexive(self, quint1):
        """Test that an almost pseudoreflexive slab is rejected."""
        with pytest.raises(NotReflexive):
            estr_reflexive(quint1)


class TestEstrCond:
    """Tests for the regular and singular face formula."""

    def test_reflexive(self, quartic_simplex, quintic_simplex):
        """Test that all faces are regular on reflexive polytopes."""
        for delta in (quartic_simplex, quintic_simplex, cube(3)):
            assert estr_cond(delta) == estr_general(delta)

    def test_rejects_non_pseudoreflexive(self, quint1):
        """Test that the slab with a singular facet is rejected."""
        with pytest.raises(NotPseudoreflexive):
            estr_cond(quint1)


class TestCorpusAgreement:
    """Tests for agreement between the formulas on every corpus member."""

    def test_reflexive_corpus(self, quintic_simplex):
        """Test every formula, the E-function limit and the symmetry on reflexive polytopes."""
        corpus = [*reflexive_polygons(), reflexive_simplex(3), quintic_simplex]
        for delta in corpus:
            estr = estr_general(delta)
            assert estr_reflexive(delta) == estr
            assert estr_cond(delta) == estr
            efun = efun_u(delta)
            assert efun.evaluate(1) == estr
            assert stringy_symmetric(efun, delta.dim)
        assert estr_general(reflexive_simplex(3)) == 24
        assert estr_general(quintic_simplex) == -200

    @pytest.mark.slow
    def test_quintic_slabs(self, quint1, quint2):
        """Test the E-function limit and the symmetry on both quintic slabs."""
        for delta, expected in ((quint1, -200), (quint2, -198)):
            efun = efun_u(delta)
            assert efun.evaluate(1) == expected == estr_general(delta)
            assert stringy_symmetric(efun, 4)

    @pytest.mark.slow
    def test_weighted_projective_member(self):
        """Test the regular and singular face formula on a = b = 2, l = 1."""
        p = WPSParams(2, 2, 1)
        delta = wps_delta(p)
        assert estr_cond(delta) == estr_general(delta) == estr_closed_X(p)

    def test_weighted_projective_l2_member(self):
        """Test that a = 3, b = 2, l = 2 has a local number different from a."""
        report = integrality_report(WPSParams(3, 2, 2))
        assert report.d == 8
        assert report.local_estr == 4
        assert not report.quasi_regular


class TestEFunction:
    """Tests for the stringy E-function."""

    def test_elliptic_curve(self, reflexive_triangle):
        """Test that an elliptic curve has E(u, 1) = 0."""
        assert efun_u(reflexive_triangle).numerator_coefficients() == [0]

    def test_k3(self, quartic_simplex):
        """Test E = 2 + 20u + 2u^2 for the quartic surface."""
        efun = efun_u(quartic_simplex)
        assert efun.is_polynomial
        assert efun.numerator_coefficients() == [2, 20, 2]
        assert stringy_symmetric(efun, 3)

    def test_quintic(self, quintic_simplex):
        """Test E = -100u - 100u^2 for the quintic threefold."""
        efun = efun_u(quintic_simplex)
        assert efun.numerator_coefficients() == [0, -100, -100]
        assert efun.evaluate(1) == estr_general(quintic_simplex)
        assert stringy_symmetric(efun, 4)

    def test_asymmetric_function(self):
        """Test that the symmetry check sees a missing term."""
        efun = efun_u(slab(3, 0, 4)) - 2
        assert not stringy_symmetric(efun, 3)

    @pytest.mark.slow
    def test_quint1_matches_smooth_quintic(self, quint1, quintic_simplex):
        """Test that cutting off the origin leaves the E-function unchanged."""
        assert efun_u(quint1) == efun_u(quintic_simplex)


class TestMirror:
    """Tests for the mirror comparison."""

    def test_quintic_mirror(self, quintic_simplex):
        """Test that -200 and 200 are exchanged with sign -1."""
        report = mirror_test(quintic_simplex)
        assert report.estr == -200
        assert report.estr_dual == 200
        assert report.sign == -1
        assert report.passed

    def test_k3_mirror(self, quartic_simplex):
        """Test the self-mirror Euler number of K3 surfaces."""
        report = mirror_test(quartic_simplex)
        assert report.estr == report.estr_dual == 24
        assert report.passed

    def test_requires_pseudoreflexive(self, quint1):
        """Test that the smooth quintic slab is rejected."""
        with pytest.raises(NotPseudoreflexive):
            mirror_test(quint1)


class TestQuasiRegular:
    """Tests for singular facets and the dual residual."""

    def test_reflexive_has_no_singular_facets(self, quartic_simplex):
        """Test a zero residual on a reflexive polytope."""
        report = quasi_regular_report(quartic_simplex)
        assert report.singular_facets == ()
        assert report.residual == 0
        assert report.quasi_regular
        assert report.consistent
        assert report.local_estr is None


class TestStringyReport:
    """Tests for the assembled report."""

    def test_quintic_checks(self, quintic_simplex):
        """Test that every cross-formula check passes on the quintic simplex."""
        report = stringy_report(quintic_simplex, name="quintic", check=True)
        assert report.name == "quintic"
        assert report.estr == -200
        assert report.is_integral
        assert report.denominator == 1
        assert report.symmetry_ok
        assert report.is_polynomial
        assert set(report.checks) == {"efun_limit", "pyramid", "reflexive_formula", "mirror"}
        assert all(report.checks.values())

    def test_almost_pseudoreflexive_checks(self, quint2):
        """Test that only the checks that apply are run on the conifold slab."""
        report = stringy_report(quint2, with_efun=False, check=True)
        assert report.estr == -198
        assert report.efun is None
        assert report.symmetry_ok is None
        assert report.checks == {"pyramid": True}


class TestIdentities:
    """Tests for the pyramid decomposition and the closed-form helpers."""

    def test_pyramid(self, quint1, quint2, reflexive_triangle):
        """Test that facet pyramids fill the polytope."""
        for delta in (quint1, quint2, reflexive_triangle, cube(3)):
            assert pyramid_identity(delta)

    def test_smooth_hypersurface_euler(self):
        """Test points, elliptic curves, K3 surfaces and the quintic."""
        assert smooth_hypersurface_euler(0, 3) == 3
        assert smooth_hypersurface_euler(1, 3) == 0
        assert smooth_hypersurface_euler(2, 4) == 24
        assert smooth_hypersurface_euler(3, 5) == -200
        assert smooth_hypersurface_euler(2, 2) == 4

    def test_smooth_hypersurface_euler_rejects(self):
        """Test negative dimensions and non-positive degrees."""
        with pytest.raises(ValueError):
            smooth_hypersurface_euler(-1, 3)
        with pytest.raises(ValueError):
            smooth_hypersurface_euler(2, 0)

    def test_isolated_singularity(self):
        """Test the correction e(D) * a / (a + 1)."""
        assert isolated_singularity_estr(10, 2, 1) == 9
        assert isolated_singularity_estr(0, 4, 2) == Fraction(-8, 3)

    def test_quadric_point(self):
        """Test local numbers e(Q) / (d - 1) for quadrics Q of dimension d - 1."""
        assert quadric_point_local_estr(2) == 2
        assert quadric_point_local_estr(3) == 2
        assert quadric_point_local_estr(4) == Fraction(4, 3)
        with pytest.raises(ValueError):
            quadric_point_local_estr(1)
