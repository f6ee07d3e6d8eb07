"""
Hilbert Scheme Components

Component records for smooth curves of genus g and degree d: curves on
quadrics and cubics, complete intersections, the quartic loci Q_{g,d} and the
infinite family (20n + 1, 5n).

Every record carries the named conditions it was judged on, so a
NotEstablished status always says which one failed.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import comb, isqrt
from typing import Any

from sympy import multiplicity

from mdscheck.arithmetic.inequality import Inequality
from mdscheck.arithmetic.pell import PellProblem, decide, residue_obstructed
from mdscheck.errors import InvalidInput
from mdscheck.geometry.blowup import complete_intersection_numerics
from mdscheck.geometry.k3lattice import (
    CurveNumerics,
    RATIONAL_CURVE_SQUARE,
    mori_existence,
    notinterior_value,
)
from mdscheck.geometry.linkage import linkage_chain

logger = logging.getLogger(__name__)

LARGE_FAMILY_MIN_N = 7
H1_READING_NOTE = "h1(I_C(3)) formula evaluated with b_i read as m_i"
QUADRIC_EXCEPTION = {(3, 5): "W_(3,5) coincides with the whole Hilbert scheme H_{8,8}"}


class Family(str, Enum):
    CI = "CI"
    ACI = "ACI"
    QUADRIC = "Quadric"
    CUBIC = "Cubic"
    QUARTIC = "Quartic"
    QUARTIC_LARGE_FAMILY = "QuarticLargeFamily"
    LOW_DEG_QUARTIC_SPECIAL = "LowDegQuarticSpecial"


class ComponentStatus(str, Enum):
    COMPONENT = "Component"
    COMPONENT_OF_REDUCTION = "ComponentOfReduction"
    OPEN_SMOOTH_LOCUS = "OpenSmoothLocus"
    NOT_ESTABLISHED = "NotEstablished"


class VerdictHint(str, Enum):
    MDS = "MDS"
    NOT_MDS = "NotMDS"


@dataclass(frozen=True)
class ChainStep:
    """One link of a certificate chain."""

    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class ComponentRecord:
    numerics: CurveNumerics
    family: Family
    parameters: tuple = ()
    dimension: int | None = None
    status: ComponentStatus = ComponentStatus.NOT_ESTABLISHED
    verdict_hint: VerdictHint | None = None
    conditions: tuple[Inequality, ...] = ()
    chain: tuple[ChainStep, ...] = ()
    notes: tuple[str, ...] = ()
    certificates: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (
            self.status == ComponentStatus.COMPONENT
            and self.dimension is not None
            and self.dimension < 4 * self.numerics.d
        ):
            raise ValueError(
                f"component {self.numerics} of dimension {self.dimension} < 4d"
            )

    @property
    def failed_conditions(self) -> list[str]:
        return [c.name for c in self.conditions if not c.holds]

    @property
    def chain_intact(self) -> bool:
        return all(step.passed for step in self.chain)

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "family": self.family.value,
            "parameters": list(self.parameters),
            "dimension": self.dimension,
            "status": self.status.value,
            "verdict_hint": self.verdict_hint.value if self.verdict_hint else None,
            "conditions": [c.to_dict() for c in self.conditions],
            "chain": [step.to_dict() for step in self.chain],
            "notes": list(self.notes),
            "certificates": dict(self.certificates),
        }


# ─── Quadrics ───────────────────────────────────────────────────────────────

def quadric_numerics(a: int, b: int) -> ComponentRecord:
    """Curves of type (a, b) on a smooth quadric: d = a + b, g = (a − 1)(b − 1)."""
    if a < 1 or b < 1:
        raise InvalidInput(f"quadric type needs a, b >= 1, got ({a}, {b})")
    a, b = sorted((a, b))
    n = CurveNumerics(g=(a - 1) * (b - 1), d=a + b)
    conditions = (
        Inequality("degree_above_4", "d", n.d, ">", 4),
        Inequality("genus_above_2d_minus_8", "g - (2d - 8)", n.g - (2 * n.d - 8), ">", 0),
    )
    notes: tuple[str, ...] = ()
    if all(c.holds for c in conditions):
        status = ComponentStatus.COMPONENT
    elif (a, b) in QUADRIC_EXCEPTION:
        status = ComponentStatus.COMPONENT
        notes = (QUADRIC_EXCEPTION[(a, b)],)
    else:
        status = ComponentStatus.NOT_ESTABLISHED
    return ComponentRecord(
        numerics=n,
        family=Family.QUADRIC,
        parameters=(a, b),
        status=status,
        verdict_hint=VerdictHint.MDS,
        conditions=conditions,
        notes=notes,
    )


@dataclass(frozen=True)
class QuadricInference:
    numerics: CurveNumerics
    quadric_type: tuple[int, int] | None
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "quadric_type": list(self.quadric_type) if self.quadric_type else None,
            "reason": self.reason,
        }


# every smooth curve with these numerics is a complete intersection
CI_ONLY_NUMERICS = {(3, 4): (1, 4), (4, 6): (2, 3)}


def maximal_quadric_genus(d: int) -> int:
    """⌊d²/4⌋ − d + 1: reached only by curves lying on a quadric."""
    return d * d // 4 - d + 1


def quadric_inference(n: CurveNumerics) -> QuadricInference | None:
    """Numerics that force every smooth curve onto a surface of degree <= 3."""
    if n.g == maximal_quadric_genus(n.d):
        a = n.d // 2
        kind = (a, a) if n.d % 2 == 0 else (a, a + 1)
        return QuadricInference(n, kind, f"maximal genus for degree {n.d}: type {kind} on a quadric")
    for (a, b), message in QUADRIC_EXCEPTION.items():
        if quadric_numerics(a, b).numerics == n:
            return QuadricInference(n, (a, b), message)
    if (n.g, n.d) in CI_ONLY_NUMERICS:
        ci = CI_ONLY_NUMERICS[(n.g, n.d)]
        return QuadricInference(n, None, f"every such curve is a complete intersection {ci}")
    return None


# ─── Cubics ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CubicType:
    """t = (k; m₁ … m₆), the class kL − ΣmᵢEᵢ on a cubic surface."""

    k: int
    m: tuple[int, int, int, int, int, int]

    def __post_init__(self) -> None:
        m = tuple(sorted(self.m, reverse=True))
        if len(m) != 6 or any(x < 0 for x in m):
            raise InvalidInput(f"cubic type needs six non-negative m_i, got {self.m}")
        if not self.k > m[0]:
            raise InvalidInput(f"cubic type needs k > m_1, got k={self.k}, m_1={m[0]}")
        if self.k < m[0] + m[1] + m[2]:
            raise InvalidInput(f"cubic type needs k >= m_1 + m_2 + m_3, got {self}")
        object.__setattr__(self, "m", m)

    @classmethod
    def parse(cls, text: str) -> "CubicType":
        """'22;6,6,6,6,4,3' or '22,6,6,6,6,4,3'."""
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise InvalidInput(f"cannot parse cubic type {text!r}") from None
        if len(values) != 7:
            raise InvalidInput(f"cubic type needs k and six m_i, got {text!r}")
        return cls(values[0], tuple(values[1:]))

    def __str__(self) -> str:
        return f"({self.k}; {', '.join(map(str, self.m))})"


def cubic_h1(t: CubicType, d: int) -> int:
    if d < 12:
        return 0
    return sum({2: 1, 1: 3, 0: 6}.get(m, 0) for m in t.m)


def cubic_numerics(t: CubicType) -> ComponentRecord:
    d = 3 * t.k - sum(t.m)
    g = comb(t.k - 1, 2) - sum(comb(m, 2) for m in t.m)
    n = CurveNumerics(g, d)
    h1 = cubic_h1(t, d)
    dimension = d + g + 18 if d > 9 else None

    smooth = Inequality("genus_above_3d_minus_19", "g - (3d - 19)", g - (3 * d - 19), ">", 0)
    reduced = Inequality("genus_at_least_3d_minus_18", "g - (3d - 18)", g - (3 * d - 18), ">=", 0)
    conditions = [Inequality("h1_ideal_twist_3", "h1(I_C(3))", h1, "==", 0), smooth]

    if h1 == 0 and smooth.holds:
        status = ComponentStatus.COMPONENT
    elif h1 == 1 and d > 9 and reduced.holds:
        status = ComponentStatus.COMPONENT_OF_REDUCTION
        conditions = [Inequality("h1_ideal_twist_3", "h1(I_C(3))", h1, "==", 1), reduced]
    else:
        status = ComponentStatus.NOT_ESTABLISHED

    notes = (H1_READING_NOTE,) if d >= 12 else ()
    return ComponentRecord(
        numerics=n,
        family=Family.CUBIC,
        parameters=(t.k, *t.m),
        dimension=dimension,
        status=status,
        verdict_hint=VerdictHint.MDS,
        conditions=tuple(conditions),
        notes=notes,
        certificates={"h1": h1},
    )


# ─── Complete intersections ─────────────────────────────────────────────────

def ci_numerics(n1: int, n2: int) -> ComponentRecord:
    n = complete_intersection_numerics(n1, n2)
    return ComponentRecord(
        numerics=n,
        family=Family.CI,
        parameters=tuple(sorted((n1, n2))),
        status=ComponentStatus.COMPONENT,
        verdict_hint=VerdictHint.MDS,
    )


# ─── Quartics ───────────────────────────────────────────────────────────────

def quartic_dimension_breakdown(g: int) -> dict[str, int]:
    """dim Q_{g,d} = (20 − 2) + 15 + g."""
    return {
        "lattice_polarized_k3": 20 - 2,
        "hyperplane_basis": 15,
        "linear_system": g,
        "total": 33 + g,
    }


def quartic_component(n: CurveNumerics) -> ComponentRecord:
    """Whether Q_{g,d}, curves on a smooth quartic, is a component of dimension 33 + g."""
    conditions = [
        Inequality("mori_existence", "d^2 - 8g", n.d * n.d - 8 * n.g, ">", 0),
        Inequality("degree_above_16", "d", n.d, ">", 16),
        Inequality("notinterior_nonnegative", "64 - 8d + 2g - 2", notinterior_value(n), ">=", 0),
    ]
    certificates: dict[str, Any] = {}
    verdict_hint = None
    notes: list[str] = []

    if mori_existence(n):
        r = n.d * n.d - 8 * (n.g - 1)
        rational = decide(PellProblem(r, 4 * RATIONAL_CURVE_SQUARE))
        elliptic = decide(PellProblem(r, 0))
        certificates = {"r": r, "rational_pell": rational.to_dict(), "elliptic_pell": elliptic.to_dict()}
        conditions.append(Inequality(
            "rational_pell_unsolvable", f"solutions of x^2 - {r}y^2 = -8",
            int(rational.solvable), "==", 0,
        ))
        if not elliptic.solvable:
            verdict_hint = VerdictHint.NOT_MDS
        else:
            notes.append(f"r = {r} is a perfect square: S carries elliptic classes")

    ok = all(c.holds for c in conditions)
    if ok:
        status, dimension = ComponentStatus.COMPONENT, 33 + n.g
        certificates["dimension_breakdown"] = quartic_dimension_breakdown(n.g)
    else:
        status, dimension, verdict_hint = ComponentStatus.NOT_ESTABLISHED, None, None
        notes.append("failed: " + ", ".join(c.name for c in conditions if not c.holds))

    return ComponentRecord(
        numerics=n,
        family=Family.QUARTIC,
        dimension=dimension,
        status=status,
        verdict_hint=verdict_hint,
        conditions=tuple(conditions),
        notes=tuple(notes),
        certificates=certificates,
    )


def large_family_numerics(nn: int) -> CurveNumerics:
    if nn < LARGE_FAMILY_MIN_N:
        raise InvalidInput(
            f"the (20n + 1, 5n) family starts at n = {LARGE_FAMILY_MIN_N}, got {nn}", {"n": nn}
        )
    return CurveNumerics(g=20 * nn + 1, d=5 * nn)


def nonsquare_certificate(d: int) -> ChainStep:
    """r = d(d − 32) with 5 | d: an odd 5-adic valuation rules out a square."""
    r = d * (d - 32)
    valuation = multiplicity(5, d) + multiplicity(5, d - 32)
    if valuation % 2 == 1:
        return ChainStep("r_nonsquare", True, f"5-adic valuation of r = {r} is {valuation} (odd)")
    s = isqrt(r)
    if s * s != r:
        return ChainStep("r_nonsquare", True, f"{s}^2 < r = {r} < {s + 1}^2")
    return ChainStep("r_nonsquare", False, f"r = {r} = {s}^2 is a perfect square")


def large_family(nn: int) -> ComponentRecord:
    """(g, d) = (20n + 1, 5n): r = d(d − 32) and 64 − 8d + 2g − 2 = 64."""
    n = large_family_numerics(nn)
    r = n.d * (n.d - 32)

    mod5 = residue_obstructed(PellProblem(r, 4 * RATIONAL_CURVE_SQUARE), 5)
    chain = (
        ChainStep("degree_above_16", n.d > 16, f"d = {n.d}"),
        ChainStep("notinterior_value", notinterior_value(n) == 64, f"64 - 8d + 2g - 2 = {notinterior_value(n)}"),
        ChainStep("rational_pell_mod_5", mod5, f"x^2 - {r}y^2 = -8 reduces to x^2 = 2 mod 5"),
        nonsquare_certificate(n.d),
    )

    base = quartic_component(n)
    verdict_hint = VerdictHint.NOT_MDS if all(step.passed for step in chain) else None
    notes = list(base.notes)
    if verdict_hint is None:
        broken = [step.name for step in chain if not step.passed]
        notes.append(f"certificate chain broken at {', '.join(broken)}")
        logger.info("Family member n=%d: chain broken at %s", nn, broken)

    return ComponentRecord(
        numerics=n,
        family=Family.QUARTIC_LARGE_FAMILY,
        parameters=(nn,),
        dimension=base.dimension,
        status=base.status,
        verdict_hint=verdict_hint,
        conditions=base.conditions,
        chain=chain,
        notes=tuple(notes),
        certificates={**base.certificates, "r": r},
    )


# ─── Low-degree catalog ─────────────────────────────────────────────────────

_LOW_DEGREE_ENTRIES = (
    (CurveNumerics(3, 9), "H_{3,9} is irreducible and every member lies on a quartic",
     CubicType(4, (1, 1, 1, 0, 0, 0)), ()),
    (CurveNumerics(7, 10), "H_{7,10} is irreducible and every member lies on a quartic",
     CubicType(6, (2, 2, 2, 1, 1, 0)), ()),
    (CurveNumerics(15, 12), "Q_{15,12} is a component of H_{15,12}", None, ()),
    (CurveNumerics(23, 14), "ACM by linkage to a line, so Q_{23,14} is a component",
     CubicType(11, (4, 4, 3, 3, 3, 2)), ((4, 5), (3, 3), (2, 2))),
)


def low_degree_quartic_catalog() -> list[ComponentRecord]:
    """The four pairs with d < 16 whose quartic locus is a non-MDS component."""
    records = []
    for n, provenance, cubic, steps in _LOW_DEGREE_ENTRIES:
        notes = [provenance]
        certificates: dict[str, Any] = {"r": n.d * n.d - 8 * (n.g - 1)}
        if cubic is not None:
            special = cubic_numerics(cubic)
            notes.append(f"special members on cubics: W_t for t = {cubic}")
            certificates["cubic_special_locus"] = {
                "type": str(cubic),
                "dimension": special.dimension,
                "codimension": 33 + n.g - special.dimension if special.dimension else None,
            }
        chain: tuple[ChainStep, ...] = ()
        if steps:
            numerics = linkage_chain(n.g, n.d, steps)
            chain = tuple(
                ChainStep(f"link_{a}_{b}", True, f"{src} linked by ({a}, {b}) to {dst}")
                for (a, b), src, dst in zip(steps, numerics, numerics[1:])
            )
            certificates["linkage_chain"] = [c.to_dict() for c in numerics]
        records.append(ComponentRecord(
            numerics=n,
            family=Family.LOW_DEG_QUARTIC_SPECIAL,
            dimension=33 + n.g,
            status=ComponentStatus.COMPONENT,
            verdict_hint=VerdictHint.NOT_MDS,
            chain=chain,
            notes=tuple(notes),
            certificates=certificates,
        ))
    return records
