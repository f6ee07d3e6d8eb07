"""
Error Types

Every failure carries the CLI exit code it maps to and a details dict that
ends up verbatim in the error envelope.
"""

from typing import Any

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_HYPOTHESIS_FAILURE = 3


class MDSCheckError(Exception):
    """Base exception for all criterion evaluation errors."""

    exit_code = EXIT_INVALID_INPUT

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.details = details or {}

    @property
    def kind(self) -> str:
        return type(self).__name__


# ─── Invalid input (exit 2) ─────────────────────────────────────────────────

class InvalidInput(MDSCheckError):
    """Inputs outside the domain of the requested operation."""


class InvalidEvidence(InvalidInput):
    """Evidence parameters outside the validity range of their criterion."""


class NonIntegralGenus(InvalidInput):
    """A linkage would produce a genus that is not a non-negative integer."""


class MissingFlag(InvalidInput):
    """A Q-canonicity or subcanonicity flag is required but absent."""


# ─── Hypothesis failures (exit 3) ───────────────────────────────────────────

class HypothesisFailure(MDSCheckError):
    """A criterion's hypotheses do not hold for the given input."""

    exit_code = EXIT_HYPOTHESIS_FAILURE

    def __init__(
        self,
        message: str,
        violated: list[str] | None = None,
        details: dict[str, Any] | None = None,
    ):
        super().__init__(message, details)
        self.violated = list(violated or [])
        self.details.setdefault("violated", self.violated)


class NotRigid(HypothesisFailure):
    """Some residual component has e_i > 0."""


class NotPositiveCone(HypothesisFailure):
    """A rational or elliptic class exists; the cone of curves is not the positive cone."""


class HypothesisFails(HypothesisFailure):
    """Named inequalities of a criterion are violated."""


class QuarticModelUnavailable(HypothesisFailure):
    """No smooth quartic with Picard lattice <H, C> exists (8g >= d^2)."""
