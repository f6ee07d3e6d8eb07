"""Tests for arithmetic/surd.py"""

from fractions import Fraction

import pytest

from mdscheck.arithmetic.surd import (
    QuadraticSurd,
    is_perfect_square,
    sqrt_surd,
    squarefree_decomposition,
)


class TestSquarefree:
    @pytest.mark.parametrize("n,expected", [(1, (1, 1)), (12, (2, 3)), (72, (6, 2)), (105, (1, 105)), (900, (30, 1))])
    def test_decomposition(self, n, expected):
        assert squarefree_decomposition(n) == expected

    def test_zero(self):
        assert squarefree_decomposition(0) == (0, 0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            squarefree_decomposition(-4)

    def test_perfect_square(self):
        assert is_perfect_square(0)
        assert is_perfect_square(900)
        assert not is_perfect_square(105)
        assert not is_perfect_square(-1)


class TestQuadraticSurd:
    def test_square_radicand_normalizes(self):
        s = sqrt_surd(81)
        assert s.is_rational
        assert s == 9

    def test_irrational(self):
        assert not sqrt_surd(65).is_rational

    def test_square_of_root(self):
        s = sqrt_surd(105)
        assert s * s == 105

    def test_equal_across_radicands(self):
        assert sqrt_surd(12) == sqrt_surd(3) * 2

    def test_incompatible_radicands_not_equal(self):
        assert sqrt_surd(2) != sqrt_surd(3)

    def test_incompatible_addition_raises(self):
        with pytest.raises(ValueError):
            sqrt_surd(2) + sqrt_surd(3)

    def test_sign_and_ordering(self):
        # 8 − √65 < 0 < 9 − √65
        assert (8 - sqrt_surd(65)).sign() == -1
        assert (9 - sqrt_surd(65)).sign() == 1
        assert sqrt_surd(65) > 8
        assert sqrt_surd(65) < 9

    def test_division_rationalizes(self):
        # 1 / (1 + √2) = √2 − 1
        value = 1 / (1 + sqrt_surd(2))
        assert value == sqrt_surd(2) - 1

    def test_norm_and_conjugate(self):
        s = QuadraticSurd(3, 1, 5)
        assert s.norm() == 4
        assert s * s.conjugate() == 4

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            sqrt_surd(2) / 0

    def test_fraction_coefficients(self):
        s = (sqrt_surd(65) + 9) / 4
        assert s.a == Fraction(9, 4)
        assert s.b == Fraction(1, 4)

    def test_to_dict_uses_strings(self):
        s = (sqrt_surd(65) + 9) / 4
        assert s.to_dict() == {"a": "9/4", "b": "1/4", "radicand": "65"}

    def test_hash_consistent_with_equality(self):
        assert hash(sqrt_surd(12)) == hash(sqrt_surd(3) * 2)
        assert hash(sqrt_surd(81)) == hash(9)

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            QuadraticSurd(0, 1, -2)
