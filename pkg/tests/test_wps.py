"""Tests for the weighted projective family P(a, 1, ..., 1)."""

from fractions import Fraction

import pytest

from stringy_engine.ehrhart import normalized_volume
from stringy_engine.errors import DimensionGuard, InvalidParams
from stringy_engine.families.wps import (
    WeightedProjectiveFamily,
    WPSParams,
    aggregate_b_terms,
    estr_closed_X,
    estr_closed_Xvee,
    integrality_report,
    parse_member,
    wps_delta,
    wps_dual,
    wps_local_estr,
    wps_quasi_regular,
)
from stringy_engine.fine_interior import Verdict, classify
from stringy_engine.mavlyutov import mav_dual
from stringy_engine.stringy import estr_general, quasi_regular_report

SMALL_PARAMS = [(2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 2, 2), (3, 5, 2), (4, 2, 3), (5, 3, 4)]


class TestWPSParams:
    """Tests for parameter validation."""

    def test_dimension(self):
        """Test d = ab + l."""
        assert WPSParams(2, 2, 1).d == 5
        assert WPSParams(3, 5, 2).d == 17
        assert str(WPSParams(3, 5, 2)) == "3-5-2"

    def test_rejects_out_of_range(self):
        """Test a, b below 2 and l outside [1, a - 1]."""
        for a, b, l in ((1, 2, 1), (2, 1, 1), (2, 2, 0), (2, 2, 2), (3, 2, 3)):
            with pytest.raises(InvalidParams):
                WPSParams(a, b, l)

    def test_parse_member(self):
        """Test member names with and without the dual suffix."""
        assert parse_member("3-2-2") == (WPSParams(3, 2, 2), False)
        assert parse_member("2-2-1-dual") == (WPSParams(2, 2, 1), True)
        with pytest.raises(InvalidParams):
            parse_member("2-2")
        with pytest.raises(InvalidParams):
            parse_member("2-2-5")


class TestClosedForms:
    """Tests for the closed-form stringy Euler numbers."""

    def test_smallest_member(self):
        """Test e_str = 2784 on both sides for a = b = 2, l = 1."""
        p = WPSParams(2, 2, 1)
        assert estr_closed_X(p) == 2784
        assert estr_closed_Xvee(p) == 2784

    def test_aggregate(self):
        """Test the denominator-b terms at two parameter choices."""
        assert aggregate_b_terms(WPSParams(2, 2, 1)) == 2
        assert aggregate_b_terms(WPSParams(3, 5, 2)) == Fraction(16, 5)

    def test_aggregate_sign(self):
        """Test that the aggregate is (d - 1) / b for l = 2 and odd a, b."""
        for a, b in ((3, 5), (5, 3), (3, 7)):
            p = WPSParams(a, b, 2)
            assert aggregate_b_terms(p) == Fraction(p.d - 1, b)
            assert aggregate_b_terms(p) == -Fraction(1 - p.d, b)

    def test_fraction_comes_from_aggregate(self):
        """Test that e_str(X) minus the denominator-b terms is an integer."""
        for a, b, l in SMALL_PARAMS:
            p = WPSParams(a, b, l)
            assert (estr_closed_X(p) - aggregate_b_terms(p)).denominator == 1

    def test_non_integral_member(self):
        """Test that a = 3, b = 5, l = 2 breaks integrality and the mirror test."""
        report = integrality_report(WPSParams(3, 5, 2))
        assert report.estr_x.denominator == 5
        assert not report.x_integral
        assert not report.mirror_pass
        assert report.sign == 1

    def test_denominators(self):
        """Test b * e_str(X) and a * e_str(X dual) are integers for a, b up to 9."""
        for a in range(2, 10):
            for b in range(2, 10):
                for l in range(1, a):
                    p = WPSParams(a, b, l)
                    assert (b * estr_closed_X(p)).denominator == 1
                    assert (a * estr_closed_Xvee(p)).denominator == 1

    def test_l1_mirror_identity(self):
        """Test e_str(X) = (-1)^(d-1) e_str(X dual) whenever l = 1."""
        for a in range(2, 7):
            for b in range(2, 7):
                assert integrality_report(WPSParams(a, b, 1)).mirror_pass

    def test_prime_pairs_fail(self):
        """Test that l = 2 with distinct odd primes a and b fails the mirror test."""
        for a, b in ((3, 5), (5, 3), (3, 7), (7, 3), (5, 7)):
            assert not integrality_report(WPSParams(a, b, 2)).mirror_pass

    def test_integral_member(self):
        """Test the report of the smallest member."""
        report = integrality_report(WPSParams(2, 2, 1))
        assert report.d == 5
        assert report.x_integral and report.xvee_integral
        assert report.mirror_pass
        assert report.quasi_regular


class TestLocalEstr:
    """Tests for the local stringy Euler number at the singular point."""

    def test_values(self):
        """Test e(D) / b for a projective space and a quadric divisor."""
        assert wps_local_estr(WPSParams(2, 2, 1)) == 2
        assert wps_local_estr(WPSParams(3, 2, 2)) == 4

    def test_quasi_regular_only_when_equal_to_a(self):
        """Test that quasi-regularity needs e(D) / b == a."""
        assert wps_quasi_regular(WPSParams(2, 2, 1))
        assert not wps_quasi_regular(WPSParams(3, 2, 2))


class TestPolytopes:
    """Tests for the materialized polytopes."""

    @pytest.mark.slow
    def test_delta_is_normalized(self):
        """Test that the Newton polytope has Fine interior at the origin."""
        delta = wps_delta(WPSParams(2, 2, 1))
        assert delta.dim == 5
        cls = classify(delta)
        assert cls.translation == (0, 0, 0, 0, 0)
        assert cls.verdict is Verdict.PSEUDOREFLEXIVE
        assert mav_dual(delta) == wps_dual(WPSParams(2, 2, 1))

    def test_dual_simplex(self):
        """Test the relation a v_0 + v_1 + ... + v_d = 0."""
        dual = wps_dual(WPSParams(2, 2, 1))
        assert len(dual.vertices) == 6
        total = [0] * 5
        for v in dual.vertices:
            weight = 2 if v[0] == 1 else 1
            total = [t + weight * c for t, c in zip(total, v)]
        assert total == [0] * 5

    def test_dual_volume(self):
        """Test v(dual) = a + d."""
        assert normalized_volume(wps_dual(WPSParams(2, 2, 1))) == 7

    def test_face_census(self):
        """Test that the Newton polytope is combinatorially a prism over a simplex."""
        delta = wps_delta(WPSParams(2, 2, 1))
        assert len(delta.vertices) == 10
        assert delta.f_vector() == [10, 25, 30, 20, 7]

    def test_dimension_guard(self, monkeypatch):
        """Test that large d is refused."""
        monkeypatch.setenv("STRINGY_MAX_DIM", "6")
        with pytest.raises(DimensionGuard):
            wps_delta(WPSParams(3, 2, 1))
        with pytest.raises(DimensionGuard):
            wps_dual(WPSParams(3, 2, 1))

    def test_family(self):
        """Test that family members build the right polytope."""
        family = WeightedProjectiveFamily()
        assert family.build("2-2-1-dual") == wps_dual(WPSParams(2, 2, 1))
        assert "d=5" in family.describe("2-2-1")

    @pytest.mark.slow
    def test_engine_agrees_with_closed_forms(self):
        """Test the general formula on both polytopes for a = b = 2, l = 1."""
        p = WPSParams(2, 2, 1)
        assert estr_general(wps_delta(p)) == estr_closed_X(p)
        assert estr_general(wps_dual(p)) == estr_closed_Xvee(p)

    @pytest.mark.slow
    def test_residual_on_dual(self):
        """Test that the engine recovers the local number a at the singular point."""
        p = WPSParams(2, 2, 1)
        report = quasi_regular_report(wps_dual(p))
        assert len(report.singular_facets) == 1
        assert report.local_estr == wps_local_estr(p)
        assert report.quasi_regular
