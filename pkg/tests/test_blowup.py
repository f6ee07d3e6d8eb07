"""Tests for geometry/blowup.py"""

from math import gcd

import pytest

from mdscheck.arithmetic.surd import is_perfect_square
from mdscheck.errors import HypothesisFails, InvalidInput, NotRigid
from mdscheck.geometry.blowup import (
    E,
    FIBER,
    H,
    LINE,
    CurveClass,
    DivisorClass,
    EndContraction,
    cone_contains,
    cone_nested,
    cones_ci,
    cones_extremal_surface,
    cones_super_rigid,
    flip_steps,
    nef_wall,
    pair,
    residual_class,
    surface_class,
    unbalance_degree,
)
from mdscheck.geometry.k3lattice import CurveNumerics, quartic_model
from mdscheck.verdicts.classify import quartic_raw_scan


def subtraction_chain(a1: int, a2: int) -> int:
    """Number of larger-minus-smaller steps until an entry reaches zero."""
    x, y, steps = a1, a2, 0
    while x and y:
        if x < y:
            x, y = y, x
        x -= y
        steps += 1
    return steps


# ─── Pairing ────────────────────────────────────────────────────────────────

class TestPairing:
    def test_basis(self):
        assert pair(H, LINE) == 1
        assert pair(H, FIBER) == 0
        assert pair(E, LINE) == 0
        assert pair(E, FIBER) == -1

    def test_surface_meets_fiber_once(self):
        assert pair(surface_class(5), FIBER) == 1

    def test_E_dot_gamma(self):
        gamma, e = residual_class(0, 1, 5, 5)
        assert e == -3
        assert pair(E, gamma) == 8

    @pytest.mark.parametrize("g,d,n1,n2", [(0, 1, 4, 4), (2, 5, 5, 5), (3, 6, 4, 5), (7, 10, 4, 9)])
    def test_convention_consistency(self, g, d, n1, n2):
        gamma, e = residual_class(g, d, n1, n2)
        assert pair(E, gamma) == n2 * d - e

    def test_divisor_arithmetic_and_str(self):
        assert str(surface_class(4)) == "4H - E"
        assert str(3 * H - E) == "3H - E"
        assert DivisorClass(6, -4).primitive() == DivisorClass(3, -2)
        assert str(CurveClass(1, -8)) == "l - 8f"


class TestResidualClass:
    def test_line_on_quartic(self):
        _, e = residual_class(0, 1, 4, 4)
        assert e == -2

    def test_genus_2_quintic(self):
        gamma, e = residual_class(2, 5, 5, 5)
        assert e == -3
        assert gamma == CurveClass(5, -28)

    def test_nef_wall_is_orthogonal(self):
        gamma, _ = residual_class(0, 1, 5, 5)
        wall = nef_wall(gamma)
        assert wall == DivisorClass(8, -1)
        assert pair(wall, gamma) == 0

    def test_line_on_quintic(self):
        gamma, _ = residual_class(0, 1, 5, 5)
        assert gamma == CurveClass(1, -8)

    def test_rejects_unordered(self):
        with pytest.raises(InvalidInput):
            residual_class(0, 1, 5, 4)


# ─── Cones ──────────────────────────────────────────────────────────────────

class TestConesSuperRigid:
    def test_2_5_in_quintics(self):
        cones = cones_super_rigid(5, 5, [(2, 5)])
        assert cones.effective == (E, surface_class(5))
        assert cones.movable == (H, surface_class(5))
        gamma, _ = residual_class(2, 5, 5, 5)
        assert pair(cones.nef[1], gamma) == 0
        assert cones.nef[1] == DivisorClass(28, -5)
        assert cones.super_rigid is True
        assert all(cones.rational.values())

    def test_extremal_component_is_min_ratio(self):
        cones = cones_super_rigid(5, 5, [(0, 1), (1, 4)])
        line, _ = residual_class(0, 1, 5, 5)
        assert pair(cones.nef[1], line) == 0

    def test_rigid_but_not_super_rigid(self):
        # e = 2·1 − 2 − 0·1 = 0
        cones = cones_super_rigid(4, 5, [(1, 1)])
        assert cones.super_rigid is False

    def test_not_rigid(self):
        with pytest.raises(NotRigid) as exc_info:
            cones_super_rigid(4, 5, [(3, 6)])
        assert exc_info.value.details["e"] == [4]

    def test_empty_residual(self):
        with pytest.raises(InvalidInput):
            cones_super_rigid(5, 5, [])

    def test_nesting(self):
        cones = cones_super_rigid(4, 9, [(0, 1), (0, 2)])
        assert cone_nested(cones.nef, cones.movable)
        assert cone_nested(cones.movable, cones.effective)


class TestConesCI:
    def test_2_3(self):
        result = cones_ci(2, 3)
        assert result.cones.movable == (H, surface_class(3))
        assert result.cones.nef == (H, surface_class(3))
        assert result.end_contraction == EndContraction.DIVISORIAL_CONTRACTING_S1

    def test_3_3_fibration(self):
        assert cones_ci(3, 3).end_contraction == EndContraction.FIBRATION_TO_P1

    def test_1_4_numerics(self):
        result = cones_ci(1, 4)
        assert result.numerics == CurveNumerics(3, 4)
        assert result.end_contraction == EndContraction.DIVISORIAL_CONTRACTING_S1

    def test_rejects_unordered(self):
        with pytest.raises(InvalidInput):
            cones_ci(3, 2)


class TestConesExtremalSurface:
    def test_3_9(self):
        result = cones_extremal_surface(CurveNumerics(3, 9))
        assert result.r == 65
        assert not result.boundary_ray.is_rational
        assert result.boundary_ray.a.radicand == 65
        assert result.cones.effective == (E, surface_class(4))
        assert result.cones.rational == {"effective": True, "movable": False, "nef": False}

    def test_23_14(self):
        result = cones_extremal_surface(CurveNumerics(23, 14))
        assert result.r == 20
        assert result.notinterior_value == -4
        assert result.to_dict()["boundary_irrational"] is True

    def test_boundary_ray_isotropic_on_S(self):
        result = cones_extremal_surface(CurveNumerics(3, 9))
        model_ray = (result.boundary_ray.a, result.boundary_ray.b)
        (a, b), (_, c) = (4, 9), (9, 4)
        x, y = model_ray
        assert x * x * a + 2 * x * y * b + y * y * c == 0

    def test_elliptic_quartic_fails(self):
        with pytest.raises(HypothesisFails) as exc_info:
            cones_extremal_surface(CurveNumerics(1, 4))
        assert any("= 0 unsolvable" in v for v in exc_info.value.violated)
        assert any("d >= 16" in v for v in exc_info.value.violated)

    def test_no_model(self):
        with pytest.raises(HypothesisFails):
            cones_extremal_surface(CurveNumerics(8, 8))

    def test_only_quartics(self):
        with pytest.raises(InvalidInput):
            cones_extremal_surface(CurveNumerics(3, 9), s=5)

    def test_boundary_inside_effective(self):
        result = cones_extremal_surface(CurveNumerics(159, 36))
        assert cone_contains(result.cones.effective, result.boundary_ray)


# ─── Flips ──────────────────────────────────────────────────────────────────

class TestFlipSteps:
    def test_5_3(self):
        flips = flip_steps(5, 3)
        assert flips.multiplicities == (1, 1, 2)
        assert flips.total == 4
        assert flips.final == (2, 2)

    def test_balanced(self):
        flips = flip_steps(6, 6)
        assert flips.multiplicities == (1,)
        assert flips.final == (6, 6)

    def test_7_1(self):
        flips = flip_steps(7, 1)
        assert flips.multiplicities == (7,)
        assert flips.final == (7, 7)

    @pytest.mark.parametrize("a1,a2", [(0, 1), (1, 0), (2, 3)])
    def test_rejects(self, a1, a2):
        with pytest.raises(InvalidInput):
            flip_steps(a1, a2)

    def test_against_subtraction_chain(self):
        for a1 in range(1, 301):
            for a2 in range(1, a1 + 1):
                flips = flip_steps(a1, a2)
                assert flips.total == subtraction_chain(a1, a2)
                x, y = flips.final
                assert x == y
                assert x % gcd(a1, a2) == 0


class TestUnbalanceDegree:
    @pytest.mark.parametrize("n1,n2,d,expected", [(4, 5, 6, 6), (5, 5, 11, 0), (4, 9, 3, 15)])
    def test_values(self, n1, n2, d, expected):
        assert unbalance_degree(n1, n2, d) == expected


class TestBoundaryRaysAcrossScan:
    def test_isotropic_and_irrational_up_to_degree_40(self):
        for row in quartic_raw_scan(40, workers=1):
            result = cones_extremal_surface(row.numerics)
            model = quartic_model(row.numerics)
            ray = (result.boundary_ray.a, result.boundary_ray.b)
            assert model.self_intersection(ray) == 0
            assert result.boundary_ray.is_rational == is_perfect_square(row.r)
