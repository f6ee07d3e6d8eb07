"""
Error Handlers

Standardized error envelope for the CLI. The exit code is part of the
envelope so that scripts reading stderr can branch on it.
"""

import uuid
from typing import Optional

from mdscheck.cli.models import encode_numbers
from mdscheck.errors import EXIT_HYPOTHESIS_FAILURE, EXIT_INVALID_INPUT, MDSCheckError

_EXIT_LABELS = {
    EXIT_INVALID_INPUT: "Invalid Input",
    EXIT_HYPOTHESIS_FAILURE: "Hypothesis Failure",
}


def error_response(
    exit_code: int,
    message: str,
    run_id: Optional[str] = None,
    details: Optional[dict] = None,
    kind: Optional[str] = None,
) -> dict:
    """Build a standardized error envelope; run_id is always present."""
    return {
        "run_id": run_id or str(uuid.uuid4()),
        "exit_code": exit_code,
        "error": kind or _EXIT_LABELS.get(exit_code, "Error"),
        "message": message,
        "details": encode_numbers(details or {}),
    }


def from_exception(exc: MDSCheckError, run_id: Optional[str] = None) -> dict:
    """Envelope for a domain error, keeping its exit code and details."""
    return error_response(exc.exit_code, str(exc), run_id, exc.details, kind=exc.kind)


def invalid_input(message: str, run_id: Optional[str] = None) -> dict:
    """Exit 2: malformed flags or values."""
    return error_response(EXIT_INVALID_INPUT, message, run_id)
