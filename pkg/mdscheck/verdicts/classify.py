"""
Classification Engine

Dispatches (g, d) plus Evidence to the criterion that applies and returns a
Verdict with its quantifier, obstruction and certificates. Evidence is taken
at face value: the engine evaluates criteria, it does not prove geometry.

Quantifiers follow the genericity of each criterion: open conditions on the
Hilbert scheme give GeneralElement, countable intersections give
VeryGeneralElement.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from mdscheck.arithmetic.inequality import Inequality
from mdscheck.catalog.hilbert import low_degree_quartic_catalog, quadric_inference
from mdscheck.errors import HypothesisFails, InvalidEvidence, InvalidInput
from mdscheck.geometry.blowup import QUARTIC, complete_intersection_numerics, cones_extremal_surface
from mdscheck.geometry.k3lattice import (
    CurveClassTest,
    CurveNumerics,
    mori_existence,
    notinterior_value,
    quartic_model,
    rational_elliptic_test,
)
from mdscheck.geometry.linkage import (
    ResidualComponent,
    SkewLinkageSpec,
    linked_numerics,
    nef_criterion_check,
    potential_contractibility_conditions,
)
from mdscheck.settings import get_settings
from mdscheck.verdicts.models import (
    Criterion,
    Evidence,
    EvidenceKind,
    Obstruction,
    Quantifier,
    Verdict,
    VerdictStatus,
)

logger = logging.getLogger(__name__)


# ─── Curves on a general quartic ────────────────────────────────────────────

@dataclass(frozen=True)
class QuarticHypotheses:
    """Hypotheses for an irrational movable ray on X, evaluated for one (g, d)."""

    numerics: CurveNumerics
    r: int | None
    test: CurveClassTest | None
    inequalities: tuple[Inequality, ...]

    @property
    def violations(self) -> list[str]:
        out = [f"{i.name}: {i}" for i in self.inequalities if not i.holds]
        if self.test is not None:
            if self.test.has_rational:
                out.append(f"rational_pell_unsolvable: x^2 - {self.r}y^2 = -8 has {self.test.rational.witness}")
            if self.test.has_elliptic:
                out.append(f"elliptic_pell_unsolvable: r = {self.r} is a perfect square")
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "r": self.r,
            "ok": self.ok,
            "inequalities": [i.to_dict() for i in self.inequalities],
            "curve_classes": self.test.to_dict() if self.test else None,
            "violations": self.violations,
        }


def quartic_hypotheses(n: CurveNumerics) -> QuarticHypotheses:
    """8g < d², both Pell equations unsolvable, and d ≥ 16 or 64 − 8d + 2g − 2 ≤ 0."""
    value = notinterior_value(n)
    inequalities = [
        Inequality("mori_existence", "d^2 - 8g", n.d * n.d - 8 * n.g, ">", 0),
        Inequality(
            "degree_or_notinterior", "d >= 16 or 64 - 8d + 2g - 2 <= 0",
            0 if n.d >= QUARTIC * QUARTIC or value <= 0 else 1, "==", 0,
        ),
    ]
    if not mori_existence(n):
        return QuarticHypotheses(n, None, None, tuple(inequalities))
    model = quartic_model(n)
    return QuarticHypotheses(n, model.r, rational_elliptic_test(model), tuple(inequalities))


# ─── Dispatch ───────────────────────────────────────────────────────────────

def classify(n: CurveNumerics, e: Evidence) -> Verdict:
    """Verdict for the blowup of P³ along a curve with numerics n, given e."""
    handler = _HANDLERS[e.kind]
    verdict = handler(n, e)
    logger.debug("classify(%s, %s) -> %s", n, e, verdict.status.value)
    return verdict


def _complete_intersection(n: CurveNumerics, e: Evidence) -> Verdict:
    n1, n2 = e.params
    expected = complete_intersection_numerics(n1, n2)
    if expected != n:
        raise InvalidEvidence(
            f"a complete intersection ({n1}, {n2}) has numerics {expected}, not {n}",
            {"expected": expected.to_dict()},
        )
    return Verdict(
        n, e, VerdictStatus.MDS, Quantifier.EVERY_ELEMENT,
        citations=(Criterion.COMPLETE_INTERSECTION,),
    )


def _almost_complete_intersection(n: CurveNumerics, e: Evidence) -> Verdict:
    return Verdict(
        n, e, VerdictStatus.MDS, Quantifier.EVERY_ELEMENT,
        citations=(Criterion.COMPLETE_INTERSECTION,),
    )


def _low_degree_surface(n: CurveNumerics, e: Evidence) -> Verdict:
    return Verdict(
        n, e, VerdictStatus.MDS, Quantifier.EVERY_ELEMENT,
        citations=(Criterion.LOW_DEGREE_SURFACE,),
        certificates={"surface_degree": e.params[0]},
    )


def _general_on_quartic(n: CurveNumerics, e: Evidence) -> Verdict:
    report = quartic_hypotheses(n)
    if not report.ok:
        return Verdict.inconclusive(n, e, *report.violations, hypotheses=report.to_dict())

    cones = cones_extremal_surface(n)
    return Verdict(
        n, e, VerdictStatus.NOT_MDS, Quantifier.GENERAL_ELEMENT,
        Obstruction.IRRATIONAL_MOVABLE_RAY,
        citations=(Criterion.QUARTIC_IRRATIONAL_RAY,),
        certificates={
            "r": report.r,
            "rational_pell": report.test.rational.certificate.to_dict(),
            "elliptic_pell": report.test.elliptic.certificate.to_dict(),
            "hypotheses": report.to_dict(),
            "cones": cones.to_dict(),
        },
    )


def _general_linked(n: CurveNumerics, e: Evidence) -> Verdict:
    g_res, d_res, n1, n2 = e.params
    check = nef_criterion_check(g_res, d_res, n1, n2, acm=e.acm)
    if not check.hypotheses_ok:
        return Verdict.inconclusive(n, e, *check.violations, linkage=check.to_dict())
    if check.numerics != n:
        raise InvalidEvidence(
            f"linking {check.residual} by ({n1}, {n2}) gives {check.numerics}, not {n}",
            {"linked": check.numerics.to_dict()},
        )
    return Verdict(
        n, e, VerdictStatus.NOT_MDS, Quantifier.VERY_GENERAL_ELEMENT,
        Obstruction.NEF_NOT_SEMIAMPLE,
        citations=(Criterion.RIGID_LINKAGE_NEF_NOT_SEMIAMPLE,),
        certificates={"linkage": check.to_dict()},
        notes=check.caveats,
    )


def _unspecified(n: CurveNumerics, e: Evidence) -> Verdict:
    inference = quadric_inference(n)
    if inference is None:
        return Verdict.inconclusive(n, e, "no criterion applies without evidence")
    return Verdict(
        n, e, VerdictStatus.MDS, Quantifier.EVERY_ELEMENT,
        citations=(Criterion.QUADRIC_MAXIMAL_GENUS, Criterion.LOW_DEGREE_SURFACE),
        certificates={"inference": inference.to_dict()},
        notes=(inference.reason,),
    )


_HANDLERS = {
    EvidenceKind.COMPLETE_INTERSECTION: _complete_intersection,
    EvidenceKind.ALMOST_COMPLETE_INTERSECTION: _almost_complete_intersection,
    EvidenceKind.ON_SURFACE_OF_DEGREE: _low_degree_surface,
    EvidenceKind.GENERAL_ON_QUARTIC: _general_on_quartic,
    EvidenceKind.GENERAL_LINKED: _general_linked,
    EvidenceKind.UNSPECIFIED: _unspecified,
}


# ─── Raw hypothesis scan ────────────────────────────────────────────────────

@dataclass(frozen=True)
class ScanRow:
    numerics: CurveNumerics
    r: int
    notinterior_value: int
    rational_certificate: str
    elliptic_certificate: str
    certificates: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "g": self.numerics.g,
            "d": self.numerics.d,
            "r": self.r,
            "notinterior_value": self.notinterior_value,
            "rational_certificate": self.rational_certificate,
            "elliptic_certificate": self.elliptic_certificate,
        }


def _scan_degree(d: int) -> list[ScanRow]:
    rows = []
    for g in range((d * d - 1) // 8 + 1):
        report = quartic_hypotheses(CurveNumerics(g, d))
        if not report.ok:
            continue
        rows.append(ScanRow(
            numerics=report.numerics,
            r=report.r,
            notinterior_value=notinterior_value(report.numerics),
            rational_certificate=str(report.test.rational.certificate),
            elliptic_certificate=str(report.test.elliptic.certificate),
            certificates={
                "rational_pell": report.test.rational.to_dict(),
                "elliptic_pell": report.test.elliptic.to_dict(),
            },
        ))
    return rows


def quartic_raw_scan(d_max: int, workers: int | None = None) -> list[ScanRow]:
    """
    Every (g, d) with d <= d_max passing the quartic hypotheses, ordered by (d, g).

    Degrees are independent, so with workers > 1 they are spread over a
    process pool and merged back in degree order.
    """
    if d_max < 3:
        raise InvalidInput(f"d_max must be at least 3, got {d_max}", {"d_max": d_max})
    workers = workers or get_settings().scan_workers
    degrees = range(1, d_max + 1)

    if workers <= 1:
        per_degree = [_scan_degree(d) for d in degrees]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_degree = list(pool.map(_scan_degree, degrees))

    rows = [row for chunk in per_degree for row in chunk]
    logger.info("Raw scan to d=%d: %d pairs (%d workers)", d_max, len(rows), workers)
    return rows


def catalog_difference(d_max: int, workers: int | None = None) -> list[ScanRow]:
    """Raw-scan pairs that are not in the four-pair low-degree catalog."""
    catalog = {record.numerics for record in low_degree_quartic_catalog()}
    return [row for row in quartic_raw_scan(d_max, workers) if row.numerics not in catalog]


# ─── Non-openness ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class NonOpennessReport:
    """
    Very general linked curves give NotMDS while their Q-canonical
    specializations give MDS, so Mori dreamness is not open in the family.
    """

    numerics: CurveNumerics
    residual: CurveNumerics
    n1: int
    n2: int
    very_general: Verdict | None
    special: Verdict
    notes: tuple[str, ...] = ()

    @property
    def non_openness_shown(self) -> bool:
        return self.very_general is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "residual": self.residual.to_dict(),
            "n1": self.n1,
            "n2": self.n2,
            "very_general": self.very_general.to_dict() if self.very_general else None,
            "special": self.special.to_dict(),
            "non_openness_shown": self.non_openness_shown,
            "notes": list(self.notes),
        }


def non_openness_witness(
    g_res: int, d_res: int, n1: int, n2: int, acm: bool | None = None
) -> NonOpennessReport:
    n1, n2 = sorted((n1, n2))
    check = nef_criterion_check(g_res, d_res, n1, n2, acm=acm)
    rational_or_elliptic = g_res <= 1
    blocking = [
        v for v in check.violations
        if not (rational_or_elliptic and v.startswith("qcanonical_genericity"))
    ]
    if blocking:
        raise HypothesisFails(
            f"linkage hypotheses fail for ({g_res}, {d_res}) by ({n1}, {n2})",
            violated=blocking,
        )

    numerics = linked_numerics(g_res, d_res, n1, n2)
    evidence = Evidence.general_linked(g_res, d_res, n1, n2, acm)
    notes: list[str] = list(check.caveats)

    very_general = None
    if rational_or_elliptic:
        notes.append(
            f"every curve of genus {g_res} is Q-canonical: the very general branch is empty, "
            "no nef non-semiample obstruction arises"
        )
    else:
        very_general = classify(numerics, evidence)

    spec = SkewLinkageSpec(n1, n2, (ResidualComponent(g_res, d_res, qcanonical=True),))
    contractibility = potential_contractibility_conditions(spec)
    if not contractibility.all_satisfied:
        raise HypothesisFails(
            f"Q-canonical residual ({g_res}, {d_res}) is not potentially contractible",
            violated=[c.reason for c in contractibility.components if not c.satisfied],
        )
    special = Verdict(
        numerics, evidence, VerdictStatus.MDS, Quantifier.EVERY_ELEMENT,
        citations=(Criterion.QCANONICAL_POTENTIALLY_CONTRACTIBLE, Criterion.DEGENERATION_TO_SEMIAMPLE),
        certificates={"potential_contractibility": contractibility.to_dict()},
        notes=("holds on the locus linked to Q-canonical residuals",),
    )
    return NonOpennessReport(numerics, check.residual, n1, n2, very_general, special, tuple(notes))
