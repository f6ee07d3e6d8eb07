"""
Report Storage

Writes report envelopes and audit entries as JSON under a local root,
following the convention: reports/<command>/YYYY/MM/DD/<command>_<timestamp>.json
and audit/runs/YYYY/MM/DD/run_<timestamp>.json.
"""

import json
import logging
from datetime import datetime, timezone
from pathlib import Path

logger = logging.getLogger(__name__)


class ReportStorage:
    """Persist JSON reports and audit entries to the local filesystem."""

    def __init__(self, root: str | Path = "reports"):
        self.root = Path(root)
        logger.info("ReportStorage root: %s", self.root)

    def write_report(
        self,
        data: dict,
        command: str,
        timestamp: datetime | None = None,
    ) -> str:
        """
        Write one report envelope.

        Args:
            data: JSON-ready payload (numbers already encoded as strings).
            command: CLI command name, used for the directory and file name.
            timestamp: Timestamp for the file name. Defaults to now.

        Returns:
            Full path of the written file.
        """
        ts = timestamp or datetime.now(timezone.utc)
        ts_str = ts.strftime("%Y%m%dT%H%M%S%fZ")
        date_path = ts.strftime("%Y/%m/%d")
        path = f"reports/{command}/{date_path}/{command}_{ts_str}.json"
        return self._write(path, json.dumps(data, ensure_ascii=False, indent=2))

    def write_audit(
        self,
        audit_entry: dict,
        timestamp: datetime | None = None,
    ) -> str:
        """Write an audit log entry."""
        ts = timestamp or datetime.now(timezone.utc)
        ts_str = ts.strftime("%Y%m%dT%H%M%S%fZ")
        date_path = ts.strftime("%Y/%m/%d")
        path = f"audit/runs/{date_path}/run_{ts_str}.json"
        return self._write(path, json.dumps(audit_entry, ensure_ascii=False, indent=2, default=str))

    def _write(self, path: str, content: str) -> str:
        full_path = self.root / path
        full_path.parent.mkdir(parents=True, exist_ok=True)
        full_path.write_text(content, encoding="utf-8")
        logger.info("Written: %s (%d bytes)", full_path, len(content))
        return str(full_path)
