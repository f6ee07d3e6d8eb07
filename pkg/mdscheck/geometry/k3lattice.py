"""
Quartic K3 Lattice

Picard lattice <H, C> of a smooth quartic surface S containing a smooth curve
C of genus g and degree d, in the basis (H|_S, C):

    Gram = [[4, d], [d, 2g − 2]],   r = d² − 8(g − 1)

A class D = mH + nC with d₀ = H·D satisfies 4·D² = d₀² − r·n², so curves of
self-intersection c exist only if x² − r·y² = 4c is solvable. The model
assumes Pic(S) = <H, C> exactly, which holds for a general quartic through a
general such curve; verdicts built on it carry the "general" quantifier.
"""

import logging
from dataclasses import dataclass
from typing import Any

from mdscheck.arithmetic.pell import PellOutcome, PellProblem, decide
from mdscheck.arithmetic.surd import QuadraticSurd
from mdscheck.errors import InvalidInput, NotPositiveCone, QuarticModelUnavailable

logger = logging.getLogger(__name__)

RATIONAL_CURVE_SQUARE = -2
ELLIPTIC_CURVE_SQUARE = 0


@dataclass(frozen=True, order=True)
class CurveNumerics:
    """Genus and degree of a smooth space curve."""

    g: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.g < 0:
            raise InvalidInput(
                f"curve numerics need d >= 1 and g >= 0, got (g, d) = ({self.g}, {self.d})",
                {"g": self.g, "d": self.d},
            )

    def __str__(self) -> str:
        return f"({self.g}, {self.d})"

    def to_dict(self) -> dict[str, int]:
        return {"g": self.g, "d": self.d}


def mori_existence(n: CurveNumerics) -> bool:
    """A smooth quartic with Pic = <H, C> containing such a curve exists iff 8g < d²."""
    return 8 * n.g < n.d * n.d


def discriminant(n: CurveNumerics) -> int:
    if not mori_existence(n):
        raise QuarticModelUnavailable(
            f"no quartic model for {n}: 8g = {8 * n.g} >= d^2 = {n.d * n.d}",
            violated=["8g < d^2"],
        )
    return n.d * n.d - 8 * (n.g - 1)


def notinterior_value(n: CurveNumerics, s: int = 4) -> int:
    """s³ − (3s − 4)d + 2g − 2; at most 0 keeps sH − C off the interior of NE(S)."""
    return s ** 3 - (3 * s - 4) * n.d + 2 * n.g - 2


@dataclass(frozen=True)
class QuarticLatticeModel:
    numerics: CurveNumerics
    r: int

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        d, g = self.numerics.d, self.numerics.g
        return (4, d), (d, 2 * g - 2)

    def pairing(self, u, v):
        """Intersection of two classes given as (m, n) coordinates in (H, C)."""
        (a, b), (c, e) = self.gram
        return u[0] * v[0] * a + (u[0] * v[1] + u[1] * v[0]) * b + u[1] * v[1] * e

    def self_intersection(self, v):
        return self.pairing(v, v)

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "gram": [list(row) for row in self.gram],
            "r": self.r,
        }


def quartic_model(n: CurveNumerics) -> QuarticLatticeModel:
    return QuarticLatticeModel(numerics=n, r=discriminant(n))


# ─── Classes of given self-intersection ─────────────────────────────────────

@dataclass(frozen=True)
class ClassSearchResult:
    """Whether d₀² − r·n² = 4c has integer solutions."""

    exists: bool
    witness: tuple[int, int] | None
    outcome: PellOutcome
    lattice_class: tuple[int, int] | None = None  # (m, n) with mH + nC integral

    def to_dict(self) -> dict[str, Any]:
        return {
            "exists": self.exists,
            "witness": list(self.witness) if self.witness else None,
            "lattice_class": list(self.lattice_class) if self.lattice_class else None,
            "pell": self.outcome.to_dict(),
        }


def lattice_class(m: QuarticLatticeModel, witness: tuple[int, int]) -> tuple[int, int] | None:
    """
    Integral class (m, n) with H·D = d₀ for a Pell witness (d₀, n), if any.

    Tries both signs of n; None when (d₀ ∓ n·d) is not divisible by 4.
    """
    d0, n = witness
    d = m.numerics.d
    for sign in (1, -1):
        if (d0 - sign * n * d) % 4 == 0:
            return (d0 - sign * n * d) // 4, sign * n
    return None


def has_class_of_self_intersection(m: QuarticLatticeModel, c: int) -> ClassSearchResult:
    outcome = decide(PellProblem(m.r, 4 * c))
    integral = lattice_class(m, outcome.witness) if outcome.witness else None
    return ClassSearchResult(outcome.solvable, outcome.witness, outcome, integral)


@dataclass(frozen=True)
class CurveClassTest:
    has_rational: bool
    has_elliptic: bool
    rational: PellOutcome
    elliptic: PellOutcome

    def to_dict(self) -> dict[str, Any]:
        return {
            "has_rational": self.has_rational,
            "has_elliptic": self.has_elliptic,
            "rational_pell": self.rational.to_dict(),
            "elliptic_pell": self.elliptic.to_dict(),
        }


def rational_elliptic_test(m: QuarticLatticeModel) -> CurveClassTest:
    """Rational curves ⇔ x² − ry² = −8 solvable; elliptic ⇔ r a perfect square."""
    rational = has_class_of_self_intersection(m, RATIONAL_CURVE_SQUARE).outcome
    elliptic = has_class_of_self_intersection(m, ELLIPTIC_CURVE_SQUARE).outcome
    logger.debug(
        "r=%d: rational=%s elliptic=%s", m.r, rational.solvable, elliptic.solvable
    )
    return CurveClassTest(rational.solvable, elliptic.solvable, rational, elliptic)


# ─── Cone of curves ─────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ConeDescription:
    """
    Closure of NE(S) when it equals the positive cone.

    Rays are (m, n) coordinates in (H|_S, C) with surd entries; `rays[0]` is
    the one on the C side, `rays[1]` the one on the far side of H.
    """

    rays: tuple[tuple[QuadraticSurd, QuadraticSurd], tuple[QuadraticSurd, QuadraticSurd]]
    rational: tuple[bool, bool]
    closed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "rays": [[c.to_dict() for c in ray] for ray in self.rays],
            "rational": list(self.rational),
            "closed": self.closed,
        }


def isotropic_rays(m: QuarticLatticeModel):
    """
    The two isotropic directions of the Gram form with positive degree.

    Solving 4t² + 2dt + (2g − 2) = 0 for t = m/n gives t = (−d ± √r)/4, so
    the rays are ((−d + √r)/4, 1) and ((d + √r)/4, −1); both have H-degree √r.
    """
    d = m.numerics.d
    sqrt_r = QuadraticSurd(0, 1, m.r)
    one = QuadraticSurd(1, 0, m.r)
    first = ((sqrt_r - d) / 4, one)
    second = ((sqrt_r + d) / 4, -one)
    return first, second


def cone_of_curves(m: QuarticLatticeModel) -> ConeDescription:
    test = rational_elliptic_test(m)
    if test.has_rational or test.has_elliptic:
        violated = []
        if test.has_rational:
            violated.append("no class with C^2 = -2")
        if test.has_elliptic:
            violated.append("no class with C^2 = 0")
        raise NotPositiveCone(
            f"cone of curves for r={m.r} is not the positive cone", violated=violated,
            details={"r": m.r},
        )
    rays = isotropic_rays(m)
    flags = tuple(all(c.is_rational for c in ray) for ray in rays)
    for ray in rays:
        assert m.self_intersection(ray) == 0
    return ConeDescription(rays=rays, rational=flags, closed=False)

