"""
Linkage Arithmetic

Genus/degree transfer under (n₁, n₂)-linkage, rigidity of skew linkages,
Mori chamber walls, Q-canonicity genericity and the hypothesis checker for
the nef-but-not-semiample criterion.

Q-canonicity is a property of the curve's linear equivalence classes and
cannot be read off (g, d): it enters only as a flag on ResidualComponent.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from mdscheck.arithmetic.inequality import Inequality
from mdscheck.errors import InvalidInput, MissingFlag, NonIntegralGenus, NotRigid
from mdscheck.geometry.blowup import (
    CurveClass,
    DivisorClass,
    E,
    EndContraction,
    complete_intersection_numerics,
    nef_wall,
    residual_class,
    surface_class,
)
from mdscheck.geometry.k3lattice import CurveNumerics

logger = logging.getLogger(__name__)

# Every smooth curve with these numerics is ACM (trivial Rao module)
ACM_NUMERICS: dict[tuple[int, int], str] = {
    (0, 1): "line",
    (0, 2): "plane conic, complete intersection (1, 2)",
    (0, 3): "twisted cubic, (2, 2)-linked to a line",
    (1, 3): "plane cubic, complete intersection (1, 3)",
    (1, 4): "elliptic quartic, complete intersection (2, 2)",
    (2, 5): "(2, 3)-linked to a line",
    (3, 4): "plane quartic, complete intersection (1, 4)",
    (4, 6): "canonical sextic, complete intersection (2, 3)",
}

EXCEPTIONAL_PAIRS: dict[tuple[int, int], str] = {
    (3, 4): "every such curve is a complete intersection (1, 4)",
    (4, 6): "every such curve is a complete intersection (2, 3)",
}

H1_CAVEAT = "h1 vanishing via n_i - 4 >= d' - 2 is sufficient, not necessary"


# ─── Linked numerics ────────────────────────────────────────────────────────

def linked_numerics(g: int, d: int, n1: int, n2: int) -> CurveNumerics:
    """Residual (g′, d′) with d + d′ = n₁n₂ and g′ = g − ½(n₁+n₂−4)(d − d′)."""
    if n1 < 1 or n2 < 1:
        raise InvalidInput(f"surface degrees must be positive, got ({n1}, {n2})")
    if not 1 <= d <= n1 * n2 - 1:
        raise InvalidInput(
            f"degree {d} cannot be linked by ({n1}, {n2}): need 1 <= d <= {n1 * n2 - 1}",
            {"d": d, "n1": n1, "n2": n2},
        )
    d_res = n1 * n2 - d
    g_res = Fraction(g) - Fraction(n1 + n2 - 4, 2) * (d - d_res)
    if g_res.denominator != 1 or g_res < 0:
        raise NonIntegralGenus(
            f"linking ({g}, {d}) by ({n1}, {n2}) gives genus {g_res}",
            {"genus": str(g_res), "d": d_res},
        )
    return CurveNumerics(g=int(g_res), d=d_res)


def linkage_chain(g: int, d: int, steps: Sequence[tuple[int, int]]) -> list[CurveNumerics]:
    """Numerics along successive linkages, starting with (g, d)."""
    chain = [CurveNumerics(g, d)]
    for n1, n2 in steps:
        current = chain[-1]
        chain.append(linked_numerics(current.g, current.d, n1, n2))
    return chain


# ─── Skew linkages ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ResidualComponent:
    """
    One connected component of the residual curve.

    qcanonical defaults to True for g <= 1; a complete intersection type
    (a, b) implies subcanonical level a + b − 4.
    """

    g: int
    d: int
    qcanonical: bool | None = None
    subcanonical_level: int | None = None
    ci_type: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        CurveNumerics(self.g, self.d)
        if self.ci_type is not None:
            a, b = self.ci_type
            if complete_intersection_numerics(a, b) != CurveNumerics(self.g, self.d):
                raise InvalidInput(
                    f"({self.g}, {self.d}) is not a complete intersection of type {self.ci_type}"
                )
            if self.subcanonical_level is None:
                object.__setattr__(self, "subcanonical_level", a + b - 4)
            if self.qcanonical is None:
                object.__setattr__(self, "qcanonical", True)
        if self.qcanonical is None and self.g <= 1:
            object.__setattr__(self, "qcanonical", True)

    @property
    def numerics(self) -> CurveNumerics:
        return CurveNumerics(self.g, self.d)

    def to_dict(self) -> dict[str, Any]:
        return {
            "g": self.g,
            "d": self.d,
            "qcanonical": self.qcanonical,
            "subcanonical_level": self.subcanonical_level,
        }


@dataclass(frozen=True)
class SkewLinkageSpec:
    n1: int
    n2: int
    components: tuple[ResidualComponent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if self.n1 < 1 or self.n1 > self.n2:
            raise InvalidInput(f"expected 1 <= n1 <= n2, got ({self.n1}, {self.n2})")
        if not self.components:
            raise InvalidInput("a skew linkage needs at least one residual component")
        if self.total_degree > self.n1 * self.n2 - 1:
            raise InvalidInput(
                f"residual degree {self.total_degree} exceeds n1*n2 - 1 = {self.n1 * self.n2 - 1}"
            )

    @classmethod
    def from_pairs(
        cls,
        n1: int,
        n2: int,
        pairs: Sequence[tuple[int, int]],
        qcanonical: bool | None = None,
    ) -> "SkewLinkageSpec":
        return cls(n1, n2, tuple(ResidualComponent(g, d, qcanonical) for g, d in pairs))

    @property
    def total_degree(self) -> int:
        return sum(c.d for c in self.components)

    @property
    def balanced(self) -> bool:
        return self.n1 == self.n2

    def to_dict(self) -> dict[str, Any]:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "components": [c.to_dict() for c in self.components],
        }


class Rigidity(str, Enum):
    SUPER_RIGID = "SuperRigid"
    RIGID = "Rigid"
    NOT_RIGID = "NotRigid"


@dataclass(frozen=True)
class RigidityReport:
    kind: Rigidity
    e: tuple[int, ...]
    balanced: bool

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "e": list(self.e), "balanced": self.balanced}


def rigidity(spec: SkewLinkageSpec) -> RigidityReport:
    es = tuple(residual_class(c.g, c.d, spec.n1, spec.n2)[1] for c in spec.components)
    if all(e < 0 for e in es):
        kind = Rigidity.SUPER_RIGID
    elif all(e <= 0 for e in es):
        kind = Rigidity.RIGID
    else:
        kind = Rigidity.NOT_RIGID
    return RigidityReport(kind, es, spec.balanced)


def _require_rigid(spec: SkewLinkageSpec) -> RigidityReport:
    report = rigidity(spec)
    if report.kind == Rigidity.NOT_RIGID:
        violated = [
            f"e_{i + 1} <= 0 for component ({c.g}, {c.d}) (e = {e})"
            for i, (c, e) in enumerate(zip(spec.components, report.e)) if e > 0
        ]
        raise NotRigid(
            f"linkage by ({spec.n1}, {spec.n2}) is not rigid", violated=violated,
            details={"e": list(report.e)},
        )
    return report


# ─── Chambers ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ChamberStructure:
    """
    Blocks of residual components with equal e_i/d_i, in increasing order.

    Indices are 0-based positions in SkewLinkageSpec.components. Wall D_a is
    orthogonal to the ray of block a; crossing it flips the curves of that block.
    """

    partition: tuple[tuple[int, ...], ...]
    ratios: tuple[Fraction, ...]
    rays: tuple[CurveClass, ...]
    walls: tuple[DivisorClass, ...]
    end_contraction: EndContraction
    n1: int
    n2: int

    @property
    def k(self) -> int:
        return len(self.partition)

    @property
    def flipped_curves(self) -> tuple[int, ...]:
        return tuple(len(block) for block in self.partition)

    def wall_sequence(self) -> list[tuple[str, DivisorClass]]:
        """E, D₁ … D_k, S₂, S₁ in order."""
        sequence = [("E", E)]
        sequence += [(f"D_{a + 1}", wall) for a, wall in enumerate(self.walls)]
        sequence += [("S_2", surface_class(self.n2)), ("S_1", surface_class(self.n1))]
        return sequence

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "partition": [list(block) for block in self.partition],
            "ratios": [str(r) for r in self.ratios],
            "rays": [ray.to_dict() for ray in self.rays],
            "walls": [wall.to_dict() for wall in self.walls],
            "flipped_curves": list(self.flipped_curves),
            "wall_sequence": [{"label": label, "class": str(cls)} for label, cls in self.wall_sequence()],
            "end_contraction": self.end_contraction.value,
        }


def _end_contraction(report: RigidityReport) -> EndContraction:
    if report.kind == Rigidity.SUPER_RIGID:
        return EndContraction.FIBRATION_TO_P1 if report.balanced else EndContraction.DIVISORIAL_TO_POINT
    return EndContraction.FIBRATION if report.balanced else EndContraction.DIVISORIAL


def chambers(spec: SkewLinkageSpec) -> ChamberStructure:
    report = _require_rigid(spec)
    ratios = [Fraction(e, c.d) for e, c in zip(report.e, spec.components)]
    order = sorted(range(len(ratios)), key=lambda i: ratios[i])

    blocks: list[list[int]] = []
    for i in order:
        if blocks and ratios[blocks[-1][0]] == ratios[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])

    rays, walls = [], []
    for block in blocks:
        c = spec.components[block[0]]
        ray, _ = residual_class(c.g, c.d, spec.n1, spec.n2)
        rays.append(ray)
        walls.append(nef_wall(ray))

    return ChamberStructure(
        partition=tuple(tuple(b) for b in blocks),
        ratios=tuple(ratios[b[0]] for b in blocks),
        rays=tuple(rays),
        walls=tuple(walls),
        end_contraction=_end_contraction(report),
        n1=spec.n1,
        n2=spec.n2,
    )


# ─── Q-canonical genericity ─────────────────────────────────────────────────

@dataclass(frozen=True)
class DimensionBound:
    """
    A dimension count for the non-Q-canonical locus.

    exact: the locus has dimension `value`; upper: dimension < `value`.
    Dominated means the locus is strictly smaller than a 4d-dimensional component.
    """

    label: str
    expression: str
    value: int
    bound: int
    exact: bool = True

    @property
    def dominated(self) -> bool:
        return self.value < self.bound if self.exact else self.value <= self.bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "expression": self.expression,
            "value": self.value,
            "bound": self.bound,
            "exact": self.exact,
            "dominated": self.dominated,
        }


@dataclass(frozen=True)
class QCanonicalGenericity:
    numerics: CurveNumerics
    case: str
    applicable: bool
    exceptional: bool
    bounds: tuple[DimensionBound, ...]
    note: str = ""

    @property
    def dominated(self) -> bool:
        return bool(self.bounds) and all(b.dominated for b in self.bounds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "case": self.case,
            "applicable": self.applicable,
            "exceptional": self.exceptional,
            "dominated": self.dominated,
            "bounds": [b.to_dict() for b in self.bounds],
            "note": self.note,
        }


def qcanonical_genericity(g: int, d: int) -> QCanonicalGenericity:
    """
    Whether a general curve of genus g and degree d is not Q-canonical.

    The Q-canonical locus is a countable union of loci whose dimensions are
    bounded case by case (Riemann-Roch above 2g − 2, Clifford below it);
    each must stay below the 4d of a component.
    """
    if g < 2:
        raise InvalidInput(
            f"genus {g} < 2: rational and elliptic curves are always Q-canonical",
            {"g": g, "d": d},
        )
    numerics = CurveNumerics(g, d)
    four_d = 4 * d

    if d > 2 * g - 2:
        case = "nonspecial"
        bounds = (DimensionBound("all", "4d - g", four_d - g, four_d),)
    elif d == 2 * g - 2:
        case = "canonical_degree"
        bounds = (DimensionBound("all", "4d - g + 4", four_d - g + 4, four_d),)
    elif 2 * d >= 3 * g:
        case = "clifford_range"
        bounds = (
            DimensionBound("general", "2d + 3g", 2 * d + 3 * g, four_d, exact=False),
            DimensionBound("hyperelliptic", "2d + 2g + 2", 2 * d + 2 * g + 2, four_d),
        )
    else:
        return QCanonicalGenericity(
            numerics, "below_clifford_range", False, False, (),
            note="no dimension estimate when d < 3g/2",
        )

    exceptional = (g, d) in EXCEPTIONAL_PAIRS
    result = QCanonicalGenericity(numerics, case, False, exceptional, bounds)
    applicable = result.dominated and not exceptional
    note = EXCEPTIONAL_PAIRS.get((g, d), "" if applicable else "dimension bound not below 4d")
    return QCanonicalGenericity(numerics, case, applicable, exceptional, bounds, note)


# ─── Nef-but-not-semiample criterion ────────────────────────────────────────

@dataclass(frozen=True)
class NefCriterionCheck:
    residual: CurveNumerics
    n1: int
    n2: int
    hypotheses_ok: bool
    numerics: CurveNumerics | None
    violations: tuple[str, ...]
    inequalities: tuple[Inequality, ...]
    acm: bool
    acm_source: str
    caveats: tuple[str, ...] = field(default_factory=tuple)

    @property
    def verdict_fragment(self) -> str | None:
        return "NotMDS for very general element" if self.hypotheses_ok else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "residual": self.residual.to_dict(),
            "n1": self.n1,
            "n2": self.n2,
            "hypotheses_ok": self.hypotheses_ok,
            "numerics": self.numerics.to_dict() if self.numerics else None,
            "violations": list(self.violations),
            "inequalities": [i.to_dict() for i in self.inequalities],
            "acm": self.acm,
            "acm_source": self.acm_source,
            "caveats": list(self.caveats),
            "verdict_fragment": self.verdict_fragment,
        }


def resolve_acm(g: int, d: int, acm: bool | None) -> tuple[bool, str]:
    if acm is not None:
        return acm, "given"
    if (g, d) in ACM_NUMERICS:
        return True, ACM_NUMERICS[(g, d)]
    return False, "unknown"


def nef_criterion_check(
    g_res: int, d_res: int, n1: int, n2: int, acm: bool | None = None
) -> NefCriterionCheck:
    n1, n2 = sorted((n1, n2))
    residual = CurveNumerics(g_res, d_res)
    if d_res > n1 * n2 - 1:
        raise InvalidInput(f"residual degree {d_res} exceeds n1*n2 - 1 = {n1 * n2 - 1}")

    violations: list[str] = []
    inequalities: list[Inequality] = []
    caveats: list[str] = []

    if g_res < 2:
        violations.append("qcanonical_genericity: g' >= 2 (rational and elliptic curves are Q-canonical)")
    else:
        generic = qcanonical_genericity(g_res, d_res)
        if generic.exceptional:
            violations.append(f"qcanonical_genericity: ({g_res}, {d_res}) is exceptional")
        elif not generic.applicable:
            violations.append(f"qcanonical_genericity: not applicable ({generic.case})")

    for label, n in (("n1", n1), ("n2", n2)):
        inequalities.append(Inequality(
            f"super_rigidity_{label}", f"2g' - 2 - ({label} - 4)d'",
            2 * g_res - 2 - (n - 4) * d_res, "<", 0,
        ))

    acm_flag, acm_source = resolve_acm(g_res, d_res, acm)
    if not acm_flag:
        caveats.append(H1_CAVEAT)
        for label, n in (("n1", n1), ("n2", n2)):
            inequalities.append(Inequality(
                f"h1_vanishing_{label}", f"{label} - 4 - (d' - 2)", n - 4 - (d_res - 2), ">=", 0,
            ))

    inequalities.append(Inequality(
        "linked_genus", "g' - (n1 + n2 - 4)(2d' - n1 n2)/2",
        g_res - (n1 + n2 - 4) * (2 * d_res - n1 * n2) // 2, ">=", 0,
    ))

    violations += [f"{i.name}: {i}" for i in inequalities if not i.holds]
    ok = not violations
    numerics = linked_numerics(g_res, d_res, n1, n2) if ok else None
    logger.debug("nef_criterion_check(%s, %d, %d): ok=%s", residual, n1, n2, ok)
    return NefCriterionCheck(
        residual, n1, n2, ok, numerics, tuple(violations), tuple(inequalities),
        acm_flag, acm_source, tuple(caveats),
    )


def restriction_coefficients(a, b, n1: int) -> tuple[Fraction, Fraction]:
    """(aH + bS₁)|_{C′} = (a − b(n₁ − 4))H|_{C′} + bK_{C′}."""
    a, b = Fraction(a), Fraction(b)
    return a - b * (n1 - 4), b


# ─── Potential contractibility ──────────────────────────────────────────────

@dataclass(frozen=True)
class ComponentCondition:
    index: int
    block: int
    top_block: bool
    branch: str
    condition_value: int
    satisfied: bool
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "block": self.block,
            "top_block": self.top_block,
            "branch": self.branch,
            "condition_value": self.condition_value,
            "satisfied": self.satisfied,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class PotentialContractibilityReport:
    spec: SkewLinkageSpec
    rigidity: RigidityReport
    components: tuple[ComponentCondition, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(c.satisfied for c in self.components)

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_dict(),
            "rigidity": self.rigidity.to_dict(),
            "components": [c.to_dict() for c in self.components],
            "all_satisfied": self.all_satisfied,
        }


def potential_contractibility_conditions(spec: SkewLinkageSpec) -> PotentialContractibilityReport:
    """
    Per-component conditions under which every residual curve can be flipped
    and the last model contracted.

    Lower blocks need Q-canonicity with 4(g − 1) − (n₂ − 4)d < 0. The top
    block needs either that (when the linkage is super-rigid) or
    (n₂ − 4)-subcanonicity.
    """
    report = _require_rigid(spec)
    structure = chambers(spec)
    target_level = spec.n2 - 4
    top = structure.k - 1
    conditions = []

    for block_idx, block in enumerate(structure.partition):
        for i in block:
            c = spec.components[i]
            value = 4 * (c.g - 1) - (spec.n2 - 4) * c.d
            inequality = f"4(g - 1) - (n2 - 4)d = {value} < 0"

            if block_idx != top:
                if c.qcanonical is None:
                    raise MissingFlag(f"component {i} ({c.g}, {c.d}) needs a qcanonical flag",
                                      {"component": i})
                ok = c.qcanonical and value < 0
                reason = inequality if c.qcanonical else "component is not Q-canonical"
                conditions.append(ComponentCondition(i, block_idx + 1, False, "qcanonical",
                                                     value, ok, reason))
                continue

            super_rigid = report.kind == Rigidity.SUPER_RIGID
            if super_rigid and c.qcanonical is True and value < 0:
                conditions.append(ComponentCondition(i, block_idx + 1, True, "qcanonical",
                                                     value, True, inequality))
            elif c.subcanonical_level is not None:
                ok = c.subcanonical_level == target_level
                reason = f"subcanonical level {c.subcanonical_level} vs n2 - 4 = {target_level}"
                conditions.append(ComponentCondition(i, block_idx + 1, True, "subcanonical",
                                                     value, ok, reason))
            elif super_rigid and c.qcanonical is None:
                raise MissingFlag(
                    f"component {i} ({c.g}, {c.d}) needs a qcanonical flag or subcanonical level",
                    {"component": i},
                )
            elif not super_rigid:
                raise MissingFlag(
                    f"component {i} ({c.g}, {c.d}) needs subcanonical level {target_level}: "
                    "the linkage is rigid but not super-rigid",
                    {"component": i, "required_level": target_level},
                )
            else:
                reason = "component is not Q-canonical" if not c.qcanonical else inequality
                conditions.append(ComponentCondition(i, block_idx + 1, True, "qcanonical",
                                                     value, False, reason))

    return PotentialContractibilityReport(spec, report, tuple(conditions))
