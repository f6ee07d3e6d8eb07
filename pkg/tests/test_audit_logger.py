"""Tests for audit_logger.py"""

from unittest.mock import MagicMock

import pytest

from mdscheck.audit_logger import AuditLogger, RunOutcome

CLASSIFY_REPORT = {
    "run_id": "run-141-35",
    "tool_version": "0.1.0",
    "command": "classify",
    "inputs": {"g": "141", "d": "35", "evidence": "quartic"},
    "result": {
        "numerics": {"g": "141", "d": "35"},
        "evidence": "GeneralOnQuartic",
        "status": "NotMDS",
        "verification": {"summary": {"passed": "2", "failed": "0"}},
    },
    "certificates": {"rational_pell": {}, "r": "20", "elliptic_pell": {}},
    "citations": [{"criterion": "quartic_irrational_ray", "anchor": "has an irrationally generated extremal ray"}],
}

SCAN_REPORT = {
    "run_id": "run-scan",
    "tool_version": "0.1.0",
    "command": "scan",
    "inputs": {"d_max": "15"},
    "result": [{"g": "3", "d": "9"}, {"g": "7", "d": "10"}],
    "certificates": {"3,9": {}, "7,10": {}},
    "citations": [],
}


@pytest.fixture
def audit():
    return AuditLogger("classify")


@pytest.fixture
def audit_with_storage():
    return AuditLogger("classify", report_storage=MagicMock())


# ─── Runs ───────────────────────────────────────────────────────────────────

class TestRecordRun:
    def test_classify_entry(self, audit):
        entry = audit.record_run(CLASSIFY_REPORT)

        assert entry["run_id"] == "run-141-35"
        assert entry["command"] == "classify"
        assert entry["outcome"] == RunOutcome.OK.value
        assert entry["exit_code"] == 0
        assert entry["verdict"] == "NotMDS"
        assert entry["numerics"] == {"g": "141", "d": "35"}
        assert entry["criteria"] == ["quartic_irrational_ray"]
        assert entry["certificate_keys"] == ["elliptic_pell", "r", "rational_pell"]
        assert entry["inputs"]["evidence"] == "quartic"
        assert entry["verification"] == {"passed": "2", "failed": "0"}
        assert "timestamp" in entry

    def test_tabular_entry_has_rows_and_no_verdict(self):
        entry = AuditLogger("scan").record_run(SCAN_REPORT, rows=2)

        assert entry["rows"] == 2
        assert entry["criteria"] == []
        assert "verdict" not in entry

    def test_run_id_generated_when_missing(self, audit):
        report = {k: v for k, v in CLASSIFY_REPORT.items() if k != "run_id"}
        assert audit.record_run(report)["run_id"]

    def test_persists(self, audit_with_storage):
        entry = audit_with_storage.record_run(CLASSIFY_REPORT)
        audit_with_storage.report_storage.write_audit.assert_called_once_with(entry)

    def test_persist_failure_does_not_raise(self, audit_with_storage):
        audit_with_storage.report_storage.write_audit.side_effect = OSError("disk full")
        entry = audit_with_storage.record_run(CLASSIFY_REPORT)
        assert entry["outcome"] == "ok"


# ─── Errors and gates ───────────────────────────────────────────────────────

class TestRecordError:
    def test_hypothesis_failure(self, audit_with_storage):
        error = {
            "run_id": "run-err",
            "exit_code": 3,
            "error": "HypothesisFailure",
            "message": "linkage by (4, 5) is not rigid",
            "details": {"violated": ["super_rigidity_n1: 4 >= 5"]},
        }
        entry = audit_with_storage.record_error(error)

        assert entry["run_id"] == "run-err"
        assert entry["outcome"] == "error"
        assert entry["exit_code"] == 3
        assert entry["error"] == "HypothesisFailure"
        assert entry["violated"] == ["super_rigidity_n1: 4 >= 5"]
        audit_with_storage.report_storage.write_audit.assert_called_once()

    def test_without_details(self, audit):
        entry = audit.record_error({"run_id": "r", "exit_code": 2, "error": "InvalidInput", "message": "bad"})
        assert entry["violated"] == []


class TestRecordGateFailure:
    def test_gate_entry(self, audit_with_storage):
        gate = {
            "name": "pell_witness",
            "check_type": "pell_witness",
            "severity": "critical",
            "passed": False,
            "details": "x^2 - 65y^2 != -8",
        }
        entry = audit_with_storage.record_gate_failure(gate)

        assert entry["outcome"] == "gate_failed"
        assert entry["gate"] == "pell_witness"
        assert entry["severity"] == "critical"
        assert entry["gate_details"] == "x^2 - 65y^2 != -8"
        assert entry["exit_code"] is None
        audit_with_storage.report_storage.write_audit.assert_called_once()
