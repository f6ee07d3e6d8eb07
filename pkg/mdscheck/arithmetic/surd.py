"""
Quadratic Surds

Exact values a + b·√radicand with rational a, b. Used for the irrational
boundary rays of cones of curves, where floating point would lose the one
fact we care about (whether the ray is rational).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import isqrt

from sympy import factorint

Rational = int | Fraction


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (k, s) with n = k²·s and s squarefree."""
    if n < 0:
        raise ValueError(f"radicand must be non-negative, got {n}")
    if n == 0:
        return 0, 0
    k, s = 1, 1
    for prime, exponent in factorint(n).items():
        k *= prime ** (exponent // 2)
        if exponent % 2:
            s *= prime
    return k, s


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadraticSurd:
    """a + b·√radicand, normalized to b = 0 when the radicand is a perfect square."""

    __slots__ = ("_a", "_b", "_radicand")

    def __init__(self, a: Rational = 0, b: Rational = 0, radicand: int = 0) -> None:
        if radicand < 0:
            raise ValueError(f"radicand must be non-negative, got {radicand}")
        a, b = Fraction(a), Fraction(b)
        root = isqrt(radicand)
        if root * root == radicand:
            a, b = a + b * root, Fraction(0)
        self._a: Fraction = a
        self._b: Fraction = b
        self._radicand: int = radicand

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def radicand(self) -> int:
        return self._radicand

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def __repr__(self) -> str:
        return f"QuadraticSurd({self._a}, {self._b}, {self._radicand})"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self._a)
        irrational = f"{abs(self._b)}·√{self._radicand}" if abs(self._b) != 1 else f"√{self._radicand}"
        if self._a == 0:
            return irrational if self._b > 0 else f"-{irrational}"
        op = "+" if self._b > 0 else "-"
        return f"{self._a} {op} {irrational}"

    def __float__(self) -> float:
        # display only
        return float(self._a) + float(self._b) * self._radicand ** 0.5

    def to_dict(self) -> dict[str, str]:
        """Decimal-string triple; fractions keep their p/q form."""
        return {"a": str(self._a), "b": str(self._b), "radicand": str(self._radicand)}

    # ─── Coercion ────────────────────────────────────────────────────────────

    def _coerce(self, other: object) -> QuadraticSurd | None:
        """Express other over this surd's radicand, or None when impossible."""
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other, 0, self._radicand)
        if not isinstance(other, QuadraticSurd):
            return None
        if other._radicand == self._radicand or other.is_rational:
            return QuadraticSurd(other._a, other._b, self._radicand)
        if self.is_rational:
            return None
        k_self, s_self = squarefree_decomposition(self._radicand)
        k_other, s_other = squarefree_decomposition(other._radicand)
        if s_self != s_other:
            return None
        return QuadraticSurd(other._a, other._b * Fraction(k_other, k_self), self._radicand)

    def _common(self, other: object) -> tuple[QuadraticSurd, QuadraticSurd] | None:
        coerced = self._coerce(other)
        if coerced is not None:
            return self, coerced
        if isinstance(other, QuadraticSurd) and self.is_rational:
            return QuadraticSurd(self._a, 0, other._radicand), other
        return None

    # ─── Comparison ──────────────────────────────────────────────────────────

    def sign(self) -> int:
        """Exact sign of the real value."""
        sa, sb = _sign(self._a), _sign(self._b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        if self._a * self._a > self._b * self._b * self._radicand:
            return sa
        return sb

    def __eq__(self, other: object) -> bool:
        pair = self._common(other)
        if pair is None:
            return False
        left, right = pair
        return left._a == right._a and left._b == right._b

    def __lt__(self, other: object) -> bool:
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        left, right = pair
        return (left - right).sign() < 0

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self._a)
        k, s = squarefree_decomposition(self._radicand)
        return hash((self._a, self._b * k, s))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    # ─── Arithmetic ──────────────────────────────────────────────────────────

    def _binary(self, other: object) -> tuple[QuadraticSurd, QuadraticSurd]:
        pair = self._common(other)
        if pair is None:
            if isinstance(other, QuadraticSurd):
                raise ValueError(
                    f"incompatible radicands {self._radicand} and {other._radicand}"
                )
            raise TypeError(f"unsupported operand {type(other).__name__}")
        return pair

    def __add__(self, other: Rational | QuadraticSurd) -> QuadraticSurd:
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        left, right = self._binary(other)
        return QuadraticSurd(left._a + right._a, left._b + right._b, left._radicand)

    def __radd__(self, other: Rational) -> QuadraticSurd:
        return self + other

    def __neg__(self) -> QuadraticSurd:
        return QuadraticSurd(-self._a, -self._b, self._radicand)

    def __sub__(self, other: Rational | QuadraticSurd) -> QuadraticSurd:
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rational) -> QuadraticSurd:
        return (-self) + other

    def __mul__(self, other: Rational | QuadraticSurd) -> QuadraticSurd:
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        left, right = self._binary(other)
        r = left._radicand
        return QuadraticSurd(
            left._a * right._a + left._b * right._b * r,
            left._a * right._b + left._b * right._a,
            r,
        )

    def __rmul__(self, other: Rational) -> QuadraticSurd:
        return self * other

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(self._a, -self._b, self._radicand)

    def norm(self) -> Fraction:
        """(a + b√r)(a − b√r) = a² − b²r."""
        return self._a * self._a - self._b * self._b * self._radicand

    def __truediv__(self, other: Rational | QuadraticSurd) -> QuadraticSurd:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a surd by zero")
            return QuadraticSurd(self._a / other, self._b / other, self._radicand)
        if not isinstance(other, QuadraticSurd):
            return NotImplemented
        left, right = self._binary(other)
        norm = right.norm()
        if norm == 0:
            raise ZeroDivisionError("division by a zero surd")
        return (left * right.conjugate()) / norm

    def __rtruediv__(self, other: Rational) -> QuadraticSurd:
        return QuadraticSurd(other, 0, self._radicand) / self


def sqrt_surd(n: int) -> QuadraticSurd:
    """√n as a surd (rational when n is a perfect square)."""
    return QuadraticSurd(0, 1, n)
