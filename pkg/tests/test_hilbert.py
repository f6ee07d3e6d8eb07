"""Tests for catalog/hilbert.py"""

import pytest

from mdscheck.catalog.hilbert import (
    H1_READING_NOTE,
    ComponentRecord,
    ComponentStatus,
    CubicType,
    Family,
    VerdictHint,
    ci_numerics,
    cubic_h1,
    cubic_numerics,
    large_family,
    large_family_numerics,
    low_degree_quartic_catalog,
    maximal_quadric_genus,
    nonsquare_certificate,
    quadric_inference,
    quadric_numerics,
    quartic_component,
    quartic_dimension_breakdown,
)
from mdscheck.errors import InvalidInput
from mdscheck.geometry.k3lattice import CurveNumerics


# ─── Quadrics ───────────────────────────────────────────────────────────────

class TestQuadrics:
    def test_3_5_exception(self):
        record = quadric_numerics(3, 5)
        assert record.numerics == CurveNumerics(8, 8)
        assert record.status == ComponentStatus.COMPONENT
        assert "genus_above_2d_minus_8" in record.failed_conditions
        assert record.notes

    def test_2_3_not_established(self):
        record = quadric_numerics(3, 2)
        assert record.numerics == CurveNumerics(2, 5)
        assert record.parameters == (2, 3)
        assert record.status == ComponentStatus.NOT_ESTABLISHED

    @pytest.mark.parametrize("a", [3, 4, 7])
    def test_balanced(self, a):
        record = quadric_numerics(a, a)
        assert record.numerics == CurveNumerics((a - 1) ** 2, 2 * a)
        assert record.verdict_hint == VerdictHint.MDS

    def test_rejects_zero(self):
        with pytest.raises(InvalidInput):
            quadric_numerics(0, 3)

    def test_maximal_genus(self):
        assert maximal_quadric_genus(8) == 9
        assert maximal_quadric_genus(9) == 12

    def test_inference_maximal(self):
        assert quadric_inference(CurveNumerics(9, 8)).quadric_type == (4, 4)
        assert quadric_inference(CurveNumerics(12, 9)).quadric_type == (4, 5)

    def test_inference_exception(self):
        assert quadric_inference(CurveNumerics(8, 8)).quadric_type == (3, 5)

    def test_inference_ci_only(self):
        inference = quadric_inference(CurveNumerics(3, 4))
        assert inference.quadric_type is None
        assert "complete intersection" in inference.reason

    def test_no_inference(self):
        assert quadric_inference(CurveNumerics(3, 9)) is None


# ─── Cubics ─────────────────────────────────────────────────────────────────

class TestCubics:
    def test_141_35(self):
        record = cubic_numerics(CubicType.parse("22;6,6,6,6,4,3"))
        assert record.numerics == CurveNumerics(141, 35)
        assert record.dimension == 194
        assert record.status == ComponentStatus.COMPONENT
        assert record.certificates["h1"] == 0

    def test_23_14_not_established(self):
        record = cubic_numerics(CubicType(11, (4, 4, 3, 3, 3, 2)))
        assert record.numerics == CurveNumerics(23, 14)
        assert record.dimension == 55
        assert record.certificates["h1"] == 1
        assert record.status == ComponentStatus.NOT_ESTABLISHED
        assert H1_READING_NOTE in record.notes

    def test_low_degree_has_no_dimension(self):
        record = cubic_numerics(CubicType(4, (1, 1, 1, 0, 0, 0)))
        assert record.numerics == CurveNumerics(3, 9)
        assert record.dimension is None

    def test_7_10(self):
        record = cubic_numerics(CubicType(6, (2, 2, 2, 1, 1, 0)))
        assert record.numerics == CurveNumerics(7, 10)
        assert record.dimension == 35

    def test_h1_counts(self):
        assert cubic_h1(CubicType(12, (3, 3, 3, 1, 0, 0)), 26) == 15
        assert cubic_h1(CubicType(12, (3, 3, 3, 1, 0, 0)), 11) == 0

    def test_parse_sorts(self):
        t = CubicType.parse("22,3,4,6,6,6,6")
        assert t.m == (6, 6, 6, 6, 4, 3)
        assert str(t) == "(22; 6, 6, 6, 6, 4, 3)"

    @pytest.mark.parametrize("text", ["22;6,6,6", "a;1,1,1,1,1,1", "3;3,0,0,0,0,0", "5;2,2,2,0,0,0"])
    def test_parse_rejects(self, text):
        with pytest.raises(InvalidInput):
            CubicType.parse(text)


# ─── Complete intersections ─────────────────────────────────────────────────

class TestCompleteIntersections:
    @pytest.mark.parametrize("n1,n2,expected", [(2, 3, (4, 6)), (4, 5, (51, 20)), (1, 4, (3, 4))])
    def test_numerics(self, n1, n2, expected):
        record = ci_numerics(n1, n2)
        assert record.numerics == CurveNumerics(*expected)
        assert record.family == Family.CI
        assert record.verdict_hint == VerdictHint.MDS


# ─── Quartics ───────────────────────────────────────────────────────────────

class TestQuarticComponent:
    def test_159_36(self):
        record = quartic_component(CurveNumerics(159, 36))
        assert record.status == ComponentStatus.COMPONENT
        assert record.dimension == 192
        assert record.verdict_hint == VerdictHint.NOT_MDS
        assert record.certificates["r"] == 32
        assert record.certificates["rational_pell"]["solvable"] is False
        assert record.certificates["dimension_breakdown"]["total"] == 192

    def test_141_35(self):
        record = quartic_component(CurveNumerics(141, 35))
        assert record.dimension == 174
        assert record.certificates["rational_pell"]["certificate"]["modulus"] == 5

    def test_3_9_below_range(self):
        record = quartic_component(CurveNumerics(3, 9))
        assert record.status == ComponentStatus.NOT_ESTABLISHED
        assert record.verdict_hint is None
        assert set(record.failed_conditions) == {"degree_above_16", "notinterior_nonnegative"}

    def test_no_quartic_model(self):
        record = quartic_component(CurveNumerics(200, 36))
        assert "mori_existence" in record.failed_conditions
        assert "r" not in record.certificates

    def test_dimension_breakdown(self):
        assert quartic_dimension_breakdown(10) == {
            "lattice_polarized_k3": 18, "hyperplane_basis": 15, "linear_system": 10, "total": 43,
        }

    def test_component_below_4d_rejected(self):
        with pytest.raises(ValueError):
            ComponentRecord(CurveNumerics(0, 20), Family.QUARTIC, dimension=33,
                            status=ComponentStatus.COMPONENT)


class TestLargeFamily:
    @pytest.mark.parametrize("nn", [7, 8, 100])
    def test_chain_holds(self, nn):
        record = large_family(nn)
        assert record.numerics == CurveNumerics(20 * nn + 1, 5 * nn)
        assert record.chain_intact
        assert record.verdict_hint == VerdictHint.NOT_MDS
        assert record.status == ComponentStatus.COMPONENT
        assert record.dimension == 33 + 20 * nn + 1
        assert record.certificates["r"] == 5 * nn * (5 * nn - 32)

    def test_square_discriminant_breaks_chain(self):
        record = large_family(10)
        assert record.certificates["r"] == 900
        assert not record.chain_intact
        assert record.verdict_hint is None
        assert any("r_nonsquare" in note for note in record.notes)

    def test_rejects_small_n(self):
        with pytest.raises(InvalidInput):
            large_family_numerics(6)

    def test_nonsquare_certificate(self):
        assert nonsquare_certificate(35).passed
        assert "odd" in nonsquare_certificate(35).detail
        assert not nonsquare_certificate(50).passed


class TestLowDegreeCatalog:
    def test_four_records(self):
        catalog = low_degree_quartic_catalog()
        assert [r.numerics for r in catalog] == [
            CurveNumerics(3, 9), CurveNumerics(7, 10), CurveNumerics(15, 12), CurveNumerics(23, 14),
        ]
        for record in catalog:
            assert record.status == ComponentStatus.COMPONENT
            assert record.verdict_hint == VerdictHint.NOT_MDS
            assert record.dimension == 33 + record.numerics.g
            assert record.family == Family.LOW_DEG_QUARTIC_SPECIAL

    def test_linkage_chain_to_line(self):
        record = low_degree_quartic_catalog()[3]
        assert [step.name for step in record.chain] == ["link_4_5", "link_3_3", "link_2_2"]
        assert record.certificates["linkage_chain"][-1] == {"g": 0, "d": 1}

    def test_cubic_special_loci(self):
        catalog = low_degree_quartic_catalog()
        assert catalog[0].certificates["cubic_special_locus"]["codimension"] is None
        assert catalog[1].certificates["cubic_special_locus"]["codimension"] == 5
        assert catalog[3].certificates["cubic_special_locus"]["codimension"] == 1
        assert "cubic_special_locus" not in catalog[2].certificates
