"""
Blowup Intersection Theory

Rank-2 intersection theory on X = Bl_C P³. Divisors are aH + bE, curves are
c_l·l + c_f·f (l a general line, f a fiber of E → C), with

    H·l = 1   H·f = 0   E·l = 0   E·f = −1

This is the sign convention under which a residual curve γ of a skew linkage
has class d(l − n₂f) + e·f and E·γ = n₂d − e.

Cones are written as ordered generator pairs (u, v): u on the E side, v on
the S₁ = n₁H − E side. w lies in <u, v> iff det(v, w) ≥ 0 and det(w, u) ≥ 0.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Union

from mdscheck.arithmetic.surd import QuadraticSurd
from mdscheck.errors import HypothesisFails, InvalidInput, NotRigid
from mdscheck.geometry.k3lattice import (
    ConeDescription,
    CurveNumerics,
    cone_of_curves,
    mori_existence,
    notinterior_value,
    quartic_model,
    rational_elliptic_test,
)

logger = logging.getLogger(__name__)

QUARTIC = 4


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _fmt(coeff, label: str, leading: bool) -> str:
    if coeff == 0:
        return ""
    sign = "-" if coeff < 0 else ("" if leading else "+")
    magnitude = abs(coeff)
    body = label if magnitude == 1 else f"{magnitude}{label}"
    return f"{sign}{body}" if leading else f" {sign} {body}"


@dataclass(frozen=True)
class DivisorClass:
    """aH + bE with rational coefficients."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b)

    def __mul__(self, k) -> "DivisorClass":
        return DivisorClass(self.a * k, self.b * k)

    __rmul__ = __mul__

    def primitive(self) -> "DivisorClass":
        """Same ray, coprime integer coefficients."""
        if self.a == 0 and self.b == 0:
            return self
        denom = self.a.denominator * self.b.denominator
        ia, ib = int(self.a * denom), int(self.b * denom)
        g = gcd(ia, ib)
        return DivisorClass(ia // g, ib // g)

    @property
    def is_rational(self) -> bool:
        return True

    def __str__(self) -> str:
        text = _fmt(self.a, "H", True) + _fmt(self.b, "E", self.a == 0)
        return text or "0"

    def to_dict(self) -> dict[str, str]:
        return {"H": str(self.a), "E": str(self.b)}


@dataclass(frozen=True)
class SurdRay:
    """a·H + b·E with quadratic-surd coefficients (an irrational cone generator)."""

    a: QuadraticSurd
    b: QuadraticSurd

    @property
    def is_rational(self) -> bool:
        return self.a.is_rational and self.b.is_rational

    def __str__(self) -> str:
        return f"({self.a})H + ({self.b})E"

    def to_dict(self) -> dict[str, Any]:
        return {"H": self.a.to_dict(), "E": self.b.to_dict()}


Generator = Union[DivisorClass, SurdRay]


@dataclass(frozen=True)
class CurveClass:
    """c_l·l + c_f·f."""

    c_l: Fraction
    c_f: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_l", _frac(self.c_l))
        object.__setattr__(self, "c_f", _frac(self.c_f))

    def __add__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(self.c_l + other.c_l, self.c_f + other.c_f)

    def __mul__(self, k) -> "CurveClass":
        return CurveClass(self.c_l * k, self.c_f * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        text = _fmt(self.c_l, "l", True) + _fmt(self.c_f, "f", self.c_l == 0)
        return text or "0"

    def to_dict(self) -> dict[str, str]:
        return {"l": str(self.c_l), "f": str(self.c_f)}


H = DivisorClass(1, 0)
E = DivisorClass(0, 1)
LINE = CurveClass(1, 0)
FIBER = CurveClass(0, 1)

PAIRING_MATRIX = ((1, 0), (0, -1))  # rows H, E; columns l, f


def surface_class(n: int) -> DivisorClass:
    """Strict transform of a degree-n surface through C: nH − E."""
    return DivisorClass(n, -1)


def pair(D: Generator, gamma: CurveClass):
    return D.a * gamma.c_l - D.b * gamma.c_f


@dataclass(frozen=True)
class BlowupModel:
    numerics: CurveNumerics
    divisor_basis: tuple[str, str] = ("H", "E")
    curve_basis: tuple[str, str] = ("l", "f")
    pairing_matrix: tuple[tuple[int, int], tuple[int, int]] = PAIRING_MATRIX

    def pair(self, D: Generator, gamma: CurveClass):
        return pair(D, gamma)


# ─── Cone geometry ──────────────────────────────────────────────────────────

def _sign(x) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def det(u: Generator, v: Generator):
    return u.a * v.b - u.b * v.a


def cone_contains(cone: tuple[Generator, Generator], w: Generator) -> bool:
    u, v = cone
    return _sign(det(v, w)) >= 0 and _sign(det(w, u)) >= 0


def cone_nested(inner: tuple[Generator, Generator], outer: tuple[Generator, Generator]) -> bool:
    return all(cone_contains(outer, w) for w in inner)


class EndContraction(str, Enum):
    FIBRATION_TO_P1 = "FibrationToP1"
    DIVISORIAL_CONTRACTING_S1 = "DivisorialContractingS1"
    DIVISORIAL_TO_POINT = "DivisorialToPoint"
    DIVISORIAL = "Divisorial"
    FIBRATION = "Fibration"


@dataclass(frozen=True)
class ConePair:
    """Effective ⊇ movable ⊇ nef, each as an ordered generator pair."""

    effective: tuple[DivisorClass, DivisorClass]
    movable: tuple[Generator, Generator]
    nef: tuple[Generator, Generator]
    super_rigid: bool | None = None
    end_contraction: EndContraction | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not (cone_nested(self.movable, self.effective) and cone_nested(self.nef, self.movable)):
            raise ValueError("cone nesting violated: nef ⊆ movable ⊆ effective")

    @property
    def rational(self) -> dict[str, bool]:
        return {
            "effective": True,
            "movable": all(g.is_rational for g in self.movable),
            "nef": all(g.is_rational for g in self.nef),
        }

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "effective": [g.to_dict() for g in self.effective],
            "movable": [g.to_dict() for g in self.movable],
            "nef": [g.to_dict() for g in self.nef],
            "rational": self.rational,
        }
        if self.super_rigid is not None:
            out["super_rigid"] = self.super_rigid
        if self.end_contraction is not None:
            out["end_contraction"] = self.end_contraction.value
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# ─── Residual curves and rigid linkages ─────────────────────────────────────

def rigidity_excess(g: int, d: int, n1: int) -> int:
    """e = 2g − 2 − (n₁ − 4)d."""
    return 2 * g - 2 - (n1 - 4) * d


def _check_degrees(n1: int, n2: int) -> None:
    if n1 < 1 or n2 < 1:
        raise InvalidInput(f"surface degrees must be positive, got ({n1}, {n2})")
    if n1 > n2:
        raise InvalidInput(f"expected n1 <= n2, got ({n1}, {n2})", {"n1": n1, "n2": n2})


def residual_class(g: int, d: int, n1: int, n2: int) -> tuple[CurveClass, int]:
    _check_degrees(n1, n2)
    e = rigidity_excess(g, d, n1)
    return CurveClass(d, e - d * n2), e


def nef_wall(gamma: CurveClass) -> DivisorClass:
    """Primitive divisor on the H side orthogonal to γ: −c_f·H − c_l·E."""
    return DivisorClass(-gamma.c_f, -gamma.c_l).primitive()


def cones_super_rigid(n1: int, n2: int, residual: Sequence[tuple[int, int]]) -> ConePair:
    _check_degrees(n1, n2)
    if not residual:
        raise InvalidInput("empty residual: use cones_ci for complete intersections")

    classes = [residual_class(g, d, n1, n2) for g, d in residual]
    offending = [
        f"e_{i + 1} <= 0 for component {tuple(residual[i])} (e = {e})"
        for i, (_, e) in enumerate(classes) if e > 0
    ]
    if offending:
        raise NotRigid(
            f"linkage by ({n1}, {n2}) is not rigid", violated=offending,
            details={"e": [e for _, e in classes]},
        )

    extremal = min(range(len(residual)), key=lambda i: Fraction(classes[i][1], residual[i][1]))
    wall = nef_wall(classes[extremal][0])
    logger.debug("Nef wall for (%d, %d) residual %s: %s", n1, n2, residual, wall)
    return ConePair(
        effective=(E, surface_class(n1)),
        movable=(H, surface_class(n2)),
        nef=(H, wall),
        super_rigid=all(e < 0 for _, e in classes),
    )


def complete_intersection_numerics(n1: int, n2: int) -> CurveNumerics:
    """Genus and degree of a smooth complete intersection of type (n₁, n₂)."""
    if n1 < 1 or n2 < 1:
        raise InvalidInput(f"surface degrees must be positive, got ({n1}, {n2})")
    return CurveNumerics(g=n1 * n2 * (n1 + n2 - 4) // 2 + 1, d=n1 * n2)


@dataclass(frozen=True)
class CompleteIntersectionCones:
    cones: ConePair
    end_contraction: EndContraction
    numerics: CurveNumerics

    def to_dict(self) -> dict[str, Any]:
        return {
            "cones": self.cones.to_dict(),
            "end_contraction": self.end_contraction.value,
            "numerics": self.numerics.to_dict(),
        }


def cones_ci(n1: int, n2: int) -> CompleteIntersectionCones:
    _check_degrees(n1, n2)
    contraction = (
        EndContraction.FIBRATION_TO_P1 if n1 == n2 else EndContraction.DIVISORIAL_CONTRACTING_S1
    )
    cones = ConePair(
        effective=(E, surface_class(n1)),
        movable=(H, surface_class(n2)),
        nef=(H, surface_class(n2)),
        end_contraction=contraction,
    )
    return CompleteIntersectionCones(cones, contraction, complete_intersection_numerics(n1, n2))


# ─── Curves on a quartic with irrational cones ──────────────────────────────

@dataclass(frozen=True)
class ExtremalSurfaceCones:
    cones: ConePair
    lattice_cone: ConeDescription
    r: int
    notinterior_value: int

    @property
    def boundary_ray(self) -> SurdRay:
        return self.cones.movable[1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "cones": self.cones.to_dict(),
            "lattice_cone": self.lattice_cone.to_dict(),
            "r": self.r,
            "notinterior_value": self.notinterior_value,
            "boundary_ray": self.boundary_ray.to_dict(),
            "boundary_irrational": not self.boundary_ray.is_rational,
        }


def cones_extremal_surface(n: CurveNumerics, s: int = QUARTIC) -> ExtremalSurfaceCones:
    """
    Movable and nef cones of X as slices of NE(S) for a general quartic S ⊃ C.

    Restriction identifies aH + bE with aH|_S + bC. Inside <H, S|_S> the
    closure of NE(S) is cut by the isotropic ray ((d + √r)/4, −1), and with no
    curves of non-positive square Nef(S) = NE(S), so Mov(X) = Nef(X) = <H, ρ>.
    """
    if s != QUARTIC:
        raise InvalidInput(f"only quartic surfaces are supported, got s={s}", {"s": s})
    if not mori_existence(n):
        raise HypothesisFails(
            f"no quartic model for {n}", violated=["8g < d^2"],
            details={"8g": 8 * n.g, "d^2": n.d * n.d},
        )

    model = quartic_model(n)
    test = rational_elliptic_test(model)
    value = notinterior_value(n, s)
    violated = []
    if test.has_rational:
        violated.append(f"x^2 - {model.r}y^2 = -8 unsolvable (no rational curves)")
    if test.has_elliptic:
        violated.append(f"x^2 - {model.r}y^2 = 0 unsolvable (no elliptic curves)")
    if not (n.d >= s * s or value <= 0):
        violated.append(f"d >= {s * s} or {s ** 3} - {3 * s - 4}d + 2g - 2 <= 0")
    if violated:
        raise HypothesisFails(
            f"extremal-surface hypotheses fail for {n}", violated=violated,
            details={"r": model.r, "notinterior_value": value},
        )

    lattice = cone_of_curves(model)
    m, k = lattice.rays[1]
    ray = SurdRay(m, k)
    cones = ConePair(
        effective=(E, surface_class(s)),
        movable=(H, ray),
        nef=(H, ray),
        notes=("Mov(X) = Nef(X): restriction to S identifies both with NE(S) ∩ <H, S|_S>",),
    )
    return ExtremalSurfaceCones(cones, lattice, model.r, value)


# ─── Flips ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FlipSequence:
    multiplicities: tuple[int, ...]
    total: int
    final: tuple[int, int]
    stages: tuple[tuple[int, int, int], ...]  # (a_i, a_{i+1}, m_i)

    def to_dict(self) -> dict[str, Any]:
        return {
            "multiplicities": list(self.multiplicities),
            "k": self.total,
            "final": list(self.final),
            "stages": [list(s) for s in self.stages],
        }


def flip_steps(a1: int, a2: int) -> FlipSequence:
    """
    Blowups needed to balance a normal bundle O(a₁) ⊕ O(a₂).

    The multiplicities are the Euclidean quotients of (a₁, a₂); blowing up
    m_i times takes (a_i, a_{i+1}) to (a_{i+2}, a_{i+1}), and the last stage
    ends on O(a_n) ⊕ O(m_n·a_{n+1}) = O(a_n) ⊕ O(a_n).
    """
    if a2 < 1 or a1 < 1:
        raise InvalidInput(f"flip_steps needs positive degrees, got ({a1}, {a2})")
    if a1 < a2:
        raise InvalidInput(f"flip_steps expects a1 >= a2, got ({a1}, {a2})")

    stages = []
    x, y = a1, a2
    while y:
        q, rem = divmod(x, y)
        stages.append((x, y, q))
        x, y = y, rem
    last_a, last_next, last_m = stages[-1]
    multiplicities = tuple(m for _, _, m in stages)
    return FlipSequence(
        multiplicities=multiplicities,
        total=sum(multiplicities),
        final=(last_a, last_m * last_next),
        stages=tuple(stages),
    )


def unbalance_degree(n1: int, n2: int, d: int) -> int:
    """deg O_γ(S₂ − S₁) = (n₂ − n₁)·d."""
    _check_degrees(n1, n2)
    return (n2 - n1) * d
