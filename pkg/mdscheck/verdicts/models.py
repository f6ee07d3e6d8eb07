"""
Verdict Models

Evidence describing where a curve sits, the criteria the engine can cite,
and the Verdict record every classification returns.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from mdscheck.errors import InvalidEvidence
from mdscheck.geometry.k3lattice import CurveNumerics


class VerdictStatus(str, Enum):
    MDS = "MDS"
    NOT_MDS = "NotMDS"
    INCONCLUSIVE = "Inconclusive"


class Quantifier(str, Enum):
    EVERY_ELEMENT = "EveryElement"
    GENERAL_ELEMENT = "GeneralElement"
    VERY_GENERAL_ELEMENT = "VeryGeneralElement"


class Obstruction(str, Enum):
    IRRATIONAL_MOVABLE_RAY = "IrrationalMovableRay"
    NEF_NOT_SEMIAMPLE = "NefNotSemiample"


class Criterion(str, Enum):
    """Criteria the engine can cite, each with the phrase it rests on."""

    COMPLETE_INTERSECTION = "complete_intersection_mds"
    LOW_DEGREE_SURFACE = "low_degree_surface_mds"
    QUADRIC_MAXIMAL_GENUS = "quadric_maximal_genus"
    QUARTIC_IRRATIONAL_RAY = "quartic_irrational_ray"
    RIGID_LINKAGE_NEF_NOT_SEMIAMPLE = "rigid_linkage_nef_not_semiample"
    QCANONICAL_POTENTIALLY_CONTRACTIBLE = "qcanonical_potentially_contractible"
    DEGENERATION_TO_SEMIAMPLE = "degeneration_to_semiample"

    @property
    def anchor(self) -> str:
        return _ANCHORS[self]

    def to_dict(self) -> dict[str, str]:
        return {"criterion": self.value, "anchor": self.anchor}


_ANCHORS = {
    Criterion.COMPLETE_INTERSECTION: "Then X is a Mori Dream Space",
    Criterion.LOW_DEGREE_SURFACE: "dlt log-Fano pair",
    Criterion.QUADRIC_MAXIMAL_GENUS: "then C is contained in a quadric",
    Criterion.QUARTIC_IRRATIONAL_RAY: "has an irrationally generated extremal ray",
    Criterion.RIGID_LINKAGE_NEF_NOT_SEMIAMPLE: "admits a nef divisor, that is not semiample",
    Criterion.QCANONICAL_POTENTIALLY_CONTRACTIBLE: "potentially contractible",
    Criterion.DEGENERATION_TO_SEMIAMPLE: "every nef divisor on X is semiample",
}


# ─── Evidence ───────────────────────────────────────────────────────────────

class EvidenceKind(str, Enum):
    COMPLETE_INTERSECTION = "CompleteIntersection"
    ALMOST_COMPLETE_INTERSECTION = "AlmostCompleteIntersection"
    ON_SURFACE_OF_DEGREE = "OnSurfaceOfDegree"
    GENERAL_ON_QUARTIC = "GeneralOnQuartic"
    GENERAL_LINKED = "GeneralLinked"
    UNSPECIFIED = "Unspecified"


@dataclass(frozen=True)
class Evidence:
    """
    What is known about the curve beyond (g, d).

    params by kind: CompleteIntersection (n1, n2); OnSurfaceOfDegree (s,);
    GeneralLinked (g', d', n1, n2) with the acm flag separate.
    """

    kind: EvidenceKind
    params: tuple[int, ...] = ()
    acm: bool | None = None

    def __post_init__(self) -> None:
        expected = {
            EvidenceKind.COMPLETE_INTERSECTION: 2,
            EvidenceKind.ON_SURFACE_OF_DEGREE: 1,
            EvidenceKind.GENERAL_LINKED: 4,
        }.get(self.kind, 0)
        if len(self.params) != expected:
            raise InvalidEvidence(
                f"{self.kind.value} takes {expected} parameters, got {len(self.params)}",
                {"params": list(self.params)},
            )
        if self.kind == EvidenceKind.COMPLETE_INTERSECTION and min(self.params) < 1:
            raise InvalidEvidence(f"complete intersection degrees must be positive: {self.params}")
        if self.kind == EvidenceKind.ON_SURFACE_OF_DEGREE and not 1 <= self.params[0] <= 3:
            raise InvalidEvidence(
                f"surface degree must be 1, 2 or 3, got {self.params[0]}", {"s": self.params[0]}
            )
        if self.kind == EvidenceKind.GENERAL_LINKED:
            g_res, d_res, n1, n2 = self.params
            if g_res < 0 or d_res < 1 or n1 < 1 or n2 < 1:
                raise InvalidEvidence(f"invalid linkage evidence {self.params}")

    # ── Constructors ──

    @classmethod
    def complete_intersection(cls, n1: int, n2: int) -> "Evidence":
        return cls(EvidenceKind.COMPLETE_INTERSECTION, tuple(sorted((n1, n2))))

    @classmethod
    def almost_complete_intersection(cls) -> "Evidence":
        return cls(EvidenceKind.ALMOST_COMPLETE_INTERSECTION)

    @classmethod
    def on_surface(cls, s: int) -> "Evidence":
        return cls(EvidenceKind.ON_SURFACE_OF_DEGREE, (s,))

    @classmethod
    def general_on_quartic(cls) -> "Evidence":
        return cls(EvidenceKind.GENERAL_ON_QUARTIC)

    @classmethod
    def general_linked(cls, g_res: int, d_res: int, n1: int, n2: int, acm: bool | None = None) -> "Evidence":
        n1, n2 = sorted((n1, n2))
        return cls(EvidenceKind.GENERAL_LINKED, (g_res, d_res, n1, n2), acm)

    @classmethod
    def unspecified(cls) -> "Evidence":
        return cls(EvidenceKind.UNSPECIFIED)

    @classmethod
    def parse(cls, text: str | None) -> "Evidence":
        """
        Parse the CLI form: ci:N1,N2 | aci | surface:S | quartic |
        linked:G',D',N1,N2[,acm] | none.
        """
        if text is None or text.strip().lower() in ("", "none"):
            return cls.unspecified()
        head, _, tail = text.strip().lower().partition(":")
        fields = [f.strip() for f in tail.split(",") if f.strip()]
        acm = None
        if head == "linked" and fields and fields[-1] in ("acm", "noacm"):
            acm = fields.pop() == "acm"
        try:
            numbers = [int(f) for f in fields]
        except ValueError:
            raise InvalidEvidence(f"non-integer parameter in evidence {text!r}") from None

        if head == "ci" and len(numbers) == 2:
            return cls.complete_intersection(*numbers)
        if head == "aci" and not numbers:
            return cls.almost_complete_intersection()
        if head == "surface" and len(numbers) == 1:
            return cls.on_surface(numbers[0])
        if head == "quartic" and not numbers:
            return cls.general_on_quartic()
        if head == "linked" and len(numbers) == 4:
            return cls.general_linked(*numbers, acm=acm)
        raise InvalidEvidence(f"unrecognised evidence {text!r}", {"evidence": text})

    def __str__(self) -> str:
        if not self.params:
            return self.kind.value
        body = ", ".join(map(str, self.params))
        if self.acm is not None:
            body += ", acm" if self.acm else ", noacm"
        return f"{self.kind.value}({body})"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value, "params": list(self.params)}
        if self.acm is not None:
            out["acm"] = self.acm
        return out


# ─── Verdict ────────────────────────────────────────────────────────────────

POSITIVE_CRITERIA = frozenset({
    Criterion.COMPLETE_INTERSECTION,
    Criterion.LOW_DEGREE_SURFACE,
    Criterion.QCANONICAL_POTENTIALLY_CONTRACTIBLE,
    Criterion.DEGENERATION_TO_SEMIAMPLE,
})


@dataclass(frozen=True)
class Verdict:
    """Outcome of one classification; never merged across evidence values."""

    numerics: CurveNumerics
    evidence: Evidence
    status: VerdictStatus
    quantifier: Quantifier | None = None
    obstruction: Obstruction | None = None
    citations: tuple[Criterion, ...] = ()
    certificates: dict[str, Any] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.status == VerdictStatus.NOT_MDS and self.obstruction is None:
            raise ValueError("NotMDS verdict without an obstruction")
        if self.status == VerdictStatus.MDS and not POSITIVE_CRITERIA & set(self.citations):
            raise ValueError("MDS verdict without a positive criterion")
        if self.status != VerdictStatus.INCONCLUSIVE and self.quantifier is None:
            raise ValueError(f"{self.status.value} verdict without a quantifier")

    @classmethod
    def inconclusive(cls, n: CurveNumerics, e: Evidence, *notes: str, **certificates) -> "Verdict":
        return cls(n, e, VerdictStatus.INCONCLUSIVE, notes=notes, certificates=certificates)

    def to_dict(self) -> dict[str, Any]:
        return {
            "numerics": self.numerics.to_dict(),
            "evidence": self.evidence.to_dict(),
            "status": self.status.value,
            "quantifier": self.quantifier.value if self.quantifier else None,
            "obstruction": self.obstruction.value if self.obstruction else None,
            "citations": [c.to_dict() for c in self.citations],
            "certificates": dict(self.certificates),
            "notes": list(self.notes),
        }
