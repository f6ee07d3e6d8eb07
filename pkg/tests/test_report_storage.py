"""Tests for report_storage.py"""

import json
from datetime import datetime, timezone
from pathlib import Path

import pytest

from mdscheck.report_storage import ReportStorage


@pytest.fixture
def storage(tmp_path):
    return ReportStorage(tmp_path)


@pytest.fixture
def sample_report():
    return {
        "run_id": "abc",
        "command": "pell",
        "result": {"equation": {"D": "32", "N": "-8"}, "solvable": False},
    }


class TestReportStorage:
    def test_write_report_creates_file(self, storage, sample_report):
        ts = datetime(2026, 3, 15, 10, 30, 0, tzinfo=timezone.utc)
        path = storage.write_report(sample_report, "pell", timestamp=ts)

        assert Path(path).exists()
        assert "reports/pell/2026/03/15/" in path
        assert "pell_20260315T103000" in path

    def test_write_report_content_matches(self, storage, sample_report):
        path = storage.write_report(sample_report, "pell")
        stored = json.loads(Path(path).read_text(encoding="utf-8"))
        assert stored == sample_report

    def test_write_audit_creates_file(self, storage):
        entry = {"job_id": "test-123", "status": "success", "record_count": 4}
        path = storage.write_audit(entry)

        assert Path(path).exists()
        assert "audit/runs/" in path
        assert "run_" in path

    def test_write_audit_content(self, storage):
        entry = {"job_id": "abc", "status": "failure", "error_details": "exit 3"}
        path = storage.write_audit(entry)
        stored = json.loads(Path(path).read_text(encoding="utf-8"))
        assert stored["job_id"] == "abc"
        assert stored["status"] == "failure"

    def test_same_second_writes_do_not_collide(self, storage, sample_report):
        ts1 = datetime(2026, 1, 1, 0, 0, 0, 1, tzinfo=timezone.utc)
        ts2 = datetime(2026, 1, 1, 0, 0, 0, 2, tzinfo=timezone.utc)
        assert storage.write_report(sample_report, "scan", ts1) != storage.write_report(sample_report, "scan", ts2)
