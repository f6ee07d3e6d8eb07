#!/usr/bin/env python3
"""
Raw scan and catalog comparison (local dev)

Runs the quartic hypothesis scan up to a degree bound, compares it with the
four-pair low-degree catalog, re-verifies every Pell certificate through the
verification gates and writes the rows to CSV.

Usage:
    python scripts/run_scan.py [D_MAX] [WORKERS]
"""

import logging
import sys
from pathlib import Path

# ─── Path setup ──────────────────────────────────────────────────────────────
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

logging.basicConfig(level=logging.INFO, format="%(levelname)s  %(message)s")
logger = logging.getLogger(__name__)

from mdscheck.catalog.hilbert import low_degree_quartic_catalog
from mdscheck.cli.export_service import COLUMN_LABELS, export_to_csv
from mdscheck.settings import get_settings
from mdscheck.verdicts.classify import classify, quartic_raw_scan
from mdscheck.verdicts.models import Evidence
from mdscheck.verification.gate_runner import GateRunner

OUTPUT_DIR = ROOT / "reports"


def run(d_max: int = 40, workers: int = 1) -> int:
    # ── Step 1: Raw scan ──────────────────────────────────────────────────────
    rows = quartic_raw_scan(d_max, workers)
    logger.info("Raw scan to d=%d: %d pairs", d_max, len(rows))

    # ── Step 2: Compare with the catalog ──────────────────────────────────────
    catalog = {r.numerics for r in low_degree_quartic_catalog()}
    found = {row.numerics for row in rows}
    missing = sorted(catalog - found)
    if missing:
        logger.error("Catalog pairs absent from the raw scan: %s", missing)
        return 1
    extra = sorted(n for n in found - catalog if n.d < 16)
    logger.info("Raw-only pairs below degree 16: %s", ", ".join(map(str, extra)) or "none")

    # ── Step 3: Re-verify certificates ────────────────────────────────────────
    gates_path = get_settings().gates_path
    failures = 0
    for row in rows:
        verdict = classify(row.numerics, Evidence.general_on_quartic())
        runner = GateRunner()
        runner.run_from_config(gates_path, context={"verdict": verdict})
        if not runner.get_summary()["verified"]:
            failures += 1
            logger.error("Verification failed for %s", row.numerics)
    logger.info("Verified %d/%d certificates", len(rows) - failures, len(rows))

    # ── Step 4: Write CSV ─────────────────────────────────────────────────────
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    out = OUTPUT_DIR / f"raw_scan_d{d_max}.csv"
    out.write_text(export_to_csv([row.to_dict() for row in rows], COLUMN_LABELS), encoding="utf-8")
    logger.info("Written: %s", out)
    return 1 if failures else 0


if __name__ == "__main__":
    d_max = int(sys.argv[1]) if len(sys.argv) > 1 else 40
    workers = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    sys.exit(run(d_max, workers))
