"""
Verification Gate Runner

Config-driven certificate re-verification. Loads gate definitions from JSON
(or YAML when PyYAML is installed), runs each against the verdict in the
context and reports failures to the audit logger.
"""

import json
import logging
from pathlib import Path
from typing import Any

from mdscheck.verification.checks import (
    CheckStatus,
    Severity,
    brute_force_check,
    inequality_check,
    inequality_records,
    isotropy_check,
    nonsquare_check,
    pell_outcomes,
    sieve_check,
    skipped,
    witness_check,
)

logger = logging.getLogger(__name__)

try:
    import yaml  # type: ignore
    HAS_YAML = True
except ImportError:
    HAS_YAML = False


class GateRunner:
    """
    Runs declarative certificate gates over a verdict.

    New gates are added in config/verification_gates.json; a check type with
    no handler fails its gate.
    """

    CHECK_DISPATCH = {
        "witness": "_run_witness_check",
        "sieve": "_run_sieve_check",
        "nonsquare": "_run_nonsquare_check",
        "inequality": "_run_inequality_check",
        "isotropy": "_run_isotropy_check",
        "brute_force": "_run_brute_force_check",
    }

    def __init__(self, audit_logger: Any = None):
        self.audit = audit_logger
        self.results: list[dict] = []

    def run_from_config(self, config_path: str | Path, context: dict | None = None) -> list[dict]:
        """
        Run every gate declared in a config file.

        Args:
            config_path: Path to verification_gates.json (or .yaml).
            context: Runtime context; gates read the verdict from context["verdict"].
        """
        config_path = Path(config_path)
        if not config_path.exists():
            logger.error("Config file not found: %s", config_path)
            return []

        text = config_path.read_text(encoding="utf-8")
        if HAS_YAML and config_path.suffix in (".yaml", ".yml"):
            config = yaml.safe_load(text)  # type: ignore
        else:
            config = json.loads(text)

        return self.run_checks(config.get("gates", []), context)

    def run_checks(self, checks: list[dict], context: dict | None = None) -> list[dict]:
        """Run checks from a list of dicts (programmatic API)."""
        context = context or {}
        self.results = []
        for check in checks:
            result = self._run_gate(check, context)
            self.results.append(result)
            self._log_result(result, check.get("severity", Severity.INFO.value))
        return self.results

    def get_summary(self) -> dict:
        """Counts per status; verified is False on any CRITICAL failure."""
        counts = {
            status: sum(1 for r in self.results if r.get("status") == status.value)
            for status in CheckStatus
        }
        critical_failure = any(
            r.get("status") == CheckStatus.FAIL.value and r.get("severity") == Severity.CRITICAL.value
            for r in self.results
        )
        return {
            "total_checks": len(self.results),
            "passed": counts[CheckStatus.PASS],
            "failed": counts[CheckStatus.FAIL],
            "warned": counts[CheckStatus.WARN],
            "skipped": counts[CheckStatus.SKIP],
            "verified": not critical_failure,
        }

    def _run_gate(self, gate: dict, context: dict) -> dict:
        check_type = gate.get("check", "")
        handler_name = self.CHECK_DISPATCH.get(check_type)
        severity = gate.get("severity", Severity.INFO.value)

        if not handler_name:
            return {
                "name": gate.get("name", "unknown"),
                "check_type": check_type,
                "status": CheckStatus.FAIL.value,
                "severity": severity,
                "details": {"error": f"Unknown check type: {check_type}"},
            }

        verdict = context.get("verdict")
        payload = verdict.to_dict() if hasattr(verdict, "to_dict") else verdict
        if payload is None:
            result = {
                "name": gate["name"], "check_type": check_type,
                "status": CheckStatus.FAIL.value, "details": {"error": "No verdict in context"},
            }
        else:
            result = getattr(self, handler_name)(gate, payload)
        result["severity"] = severity
        return result

    # ── Handlers: each combines the sub-results of one check type ──

    @staticmethod
    def _combine(name: str, check_type: str, results: list[dict], empty_reason: str) -> dict:
        if not results:
            return skipped(name, check_type, empty_reason)
        failed = [r for r in results if r["status"] == CheckStatus.FAIL.value]
        status = CheckStatus.FAIL if failed else CheckStatus.PASS
        return {
            "name": name,
            "check_type": check_type,
            "status": status.value,
            "details": {"checked": len(results), "failures": [r["details"] for r in failed]},
        }

    def _run_witness_check(self, gate: dict, payload: dict) -> dict:
        results = [
            witness_check(o["equation"]["D"], o["equation"]["N"], o["witness"])
            for o in pell_outcomes(payload) if o["solvable"]
        ]
        return self._combine(gate["name"], "witness", results, "no solvable Pell equation")

    def _run_sieve_check(self, gate: dict, payload: dict) -> dict:
        results = []
        for outcome in pell_outcomes(payload):
            cert = outcome["certificate"]
            if cert.get("kind") != "ModulusSieve":
                continue
            eq = outcome["equation"]
            reduced = (cert["equation"]["D"], cert["equation"]["N"])
            results.append(sieve_check(eq["D"], eq["N"], cert["modulus"], reduced, cert.get("scale", 1)))
        return self._combine(gate["name"], "sieve", results, "no sieve certificate")

    def _run_nonsquare_check(self, gate: dict, payload: dict) -> dict:
        results = [
            nonsquare_check(o["equation"]["D"])
            for o in pell_outcomes(payload)
            if o["equation"]["N"] == 0 and not o["solvable"]
        ]
        return self._combine(gate["name"], "nonsquare", results, "no square test")

    def _run_inequality_check(self, gate: dict, payload: dict) -> dict:
        records = inequality_records(payload)
        if not records:
            return skipped(gate["name"], "inequality", "no inequalities")
        return inequality_check(records, name=gate["name"])

    def _run_isotropy_check(self, gate: dict, payload: dict) -> dict:
        ray = payload.get("certificates", {}).get("cones", {}).get("boundary_ray")
        if ray is None:
            return skipped(gate["name"], "isotropy", "no irrational boundary ray")
        numerics = payload["numerics"]
        return isotropy_check(numerics["g"], numerics["d"], ray, name=gate["name"])

    def _run_brute_force_check(self, gate: dict, payload: dict) -> dict:
        y_limit = gate.get("y_limit", 2000)
        results = [
            brute_force_check(o["equation"]["D"], o["equation"]["N"], y_limit)
            for o in pell_outcomes(payload) if not o["solvable"]
        ]
        return self._combine(gate["name"], "brute_force", results, "no unsolvability claim")

    def _log_result(self, result: dict, severity: str) -> None:
        status = result.get("status", "UNKNOWN")
        name = result.get("name", "unknown")

        if status == CheckStatus.FAIL.value:
            logger.warning("VERIFICATION GATE FAIL [%s] %s: %s", severity, name, result.get("details"))
            if self.audit:
                self.audit.record_gate_failure(result)
        elif status == CheckStatus.WARN.value:
            logger.info("VERIFICATION GATE WARN [%s] %s", severity, name)
        else:
            logger.debug("VERIFICATION GATE %s [%s] %s", status, severity, name)
