"""
Audit Logger

One audit entry per CLI run, built from the report envelope or the error
envelope of that run: which command ran on which inputs, the verdict it
reached, the criteria it cited and the certificates it attached. Failed
verification gates get their own entries.

Entries go to Python logging and, when a ReportStorage is attached, to
audit/runs/ next to the reports.
"""

import logging
import uuid
from datetime import datetime, timezone
from enum import Enum
from typing import Any

logger = logging.getLogger(__name__)


class RunOutcome(str, Enum):
    OK = "ok"
    ERROR = "error"
    GATE_FAILED = "gate_failed"


def _verdict_fields(result: Any) -> dict[str, Any]:
    """Status and numerics when the result is a serialized Verdict."""
    if not isinstance(result, dict) or "evidence" not in result or "status" not in result:
        return {}
    fields = {"verdict": result["status"], "numerics": result.get("numerics")}
    verification = result.get("verification")
    if verification:
        fields["verification"] = verification.get("summary")
    return fields


class AuditLogger:
    """Audit trail for mdscheck runs."""

    def __init__(self, command: str, report_storage=None):
        """
        Args:
            command: CLI command the entries belong to.
            report_storage: ReportStorage used to persist entries.
                            If None, entries only go to Python logging.
        """
        self.command = command
        self.report_storage = report_storage

    def record_run(self, report: dict, rows: int | None = None) -> dict:
        """
        Audit a finished command from its encoded report envelope.

        `rows` is the row count of tabular commands (scan).
        """
        entry = self._entry(RunOutcome.OK, report.get("run_id"), exit_code=0)
        entry.update(
            tool_version=report.get("tool_version"),
            inputs=report.get("inputs", {}),
            criteria=[c.get("criterion") for c in report.get("citations", [])],
            certificate_keys=sorted(report.get("certificates", {})),
            **_verdict_fields(report.get("result")),
        )
        if rows is not None:
            entry["rows"] = rows
        logger.info(
            "Run %s: command=%s, verdict=%s, criteria=%s, run_id=%s",
            entry["outcome"], self.command, entry.get("verdict", "-"),
            ",".join(entry["criteria"]) or "-", entry["run_id"],
        )
        self._persist(entry)
        return entry

    def record_error(self, error: dict) -> dict:
        """Audit a command that ended with an error envelope (exit 2 or 3)."""
        details = error.get("details", {})
        entry = self._entry(RunOutcome.ERROR, error.get("run_id"), exit_code=error.get("exit_code"))
        entry.update(
            error=error.get("error"),
            message=error.get("message"),
            violated=list(details.get("violated", [])),
        )
        logger.error(
            "Run %s: command=%s, error=%s, exit_code=%s, run_id=%s",
            entry["outcome"], self.command, entry["error"], entry["exit_code"], entry["run_id"],
        )
        self._persist(entry)
        return entry

    def record_gate_failure(self, gate_result: dict) -> dict:
        """Audit one failed certificate gate."""
        entry = self._entry(RunOutcome.GATE_FAILED, None)
        entry.update(
            gate=gate_result.get("name"),
            check_type=gate_result.get("check_type"),
            severity=gate_result.get("severity"),
            gate_details=gate_result.get("details"),
        )
        logger.warning(
            "Gate %s failed for command=%s (severity %s)",
            entry["gate"], self.command, entry["severity"],
        )
        self._persist(entry)
        return entry

    def _entry(self, outcome: RunOutcome, run_id: str | None, exit_code: int | None = None) -> dict:
        return {
            "run_id": run_id or str(uuid.uuid4()),
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "command": self.command,
            "outcome": outcome.value,
            "exit_code": exit_code,
        }

    def _persist(self, entry: dict) -> None:
        if self.report_storage:
            try:
                self.report_storage.write_audit(entry)
            except Exception as e:
                logger.warning("Failed to persist audit entry: %s", e)
