"""Tests for certificate verification gates"""

from unittest.mock import MagicMock

import pytest

from mdscheck.geometry.blowup import cones_extremal_surface
from mdscheck.geometry.k3lattice import CurveNumerics
from mdscheck.settings import DEFAULT_GATES_PATH
from mdscheck.verdicts.classify import classify
from mdscheck.verdicts.models import Evidence
from mdscheck.verification.checks import (
    brute_force_check,
    inequality_check,
    isotropy_check,
    nonsquare_check,
    pell_outcomes,
    sieve_check,
    walk,
    witness_check,
)
from mdscheck.verification.gate_runner import GateRunner


@pytest.fixture
def quartic_verdict():
    return classify(CurveNumerics(141, 35), Evidence.general_on_quartic())


@pytest.fixture
def tampered_payload():
    return {
        "numerics": {"g": 2, "d": 9},
        "certificates": {
            "rational": {
                "equation": {"D": 73, "N": -8},
                "solvable": True,
                "witness": [1, 1],
                "certificate": {"kind": "WitnessFound"},
            },
        },
    }


# ─── Individual Checks ──────────────────────────────────────────────────────

class TestWitnessCheck:
    def test_pass(self):
        assert witness_check(2, -1, (1, 1))["status"] == "PASS"

    def test_fail(self):
        result = witness_check(73, -8, [1, 1])
        assert result["status"] == "FAIL"
        assert result["details"]["value"] == -72

    def test_trivial_rejected(self):
        assert witness_check(5, 0, (0, 0))["status"] == "FAIL"


class TestSieveCheck:
    def test_pass(self):
        assert sieve_check(65, -8, 5)["status"] == "PASS"

    def test_fail_when_residues_exist(self):
        result = sieve_check(2, -1, 3)
        assert result["status"] == "FAIL"
        assert result["details"]["residue_solutions"] > 0

    def test_reduced(self):
        assert sieve_check(32, -8, 8, (8, -2), 2)["status"] == "PASS"

    def test_reduction_mismatch(self):
        result = sieve_check(32, -8, 8, (8, -1), 2)
        assert result["status"] == "FAIL"
        assert "error" in result["details"]

    def test_scale_not_power_of_two(self):
        result = sieve_check(18, -9, 5, (2, -1), 3)
        assert result["status"] == "FAIL"
        assert result["details"]["error"] == "scale must be a power of two"


class TestNonsquareCheck:
    def test_pass(self):
        result = nonsquare_check(105)
        assert result["status"] == "PASS"
        assert result["details"]["floor_sqrt"] == 10

    def test_fail(self):
        assert nonsquare_check(900)["status"] == "FAIL"


class TestBruteForceCheck:
    def test_pass(self):
        assert brute_force_check(65, -8)["status"] == "PASS"

    def test_refutes(self):
        result = brute_force_check(73, -8)
        assert result["status"] == "FAIL"
        x, y = result["details"]["solution"]
        assert x * x - 73 * y * y == -8


class TestInequalityCheck:
    def test_pass(self):
        records = [{"name": "a", "value": -1, "relation": "<", "bound": 0, "holds": True}]
        assert inequality_check(records)["status"] == "PASS"

    def test_mismatch(self):
        records = [{"name": "a", "value": 1, "relation": "<", "bound": 0, "holds": True}]
        result = inequality_check(records)
        assert result["status"] == "FAIL"
        assert result["details"]["mismatches"][0]["recomputed"] is False


class TestIsotropyCheck:
    def test_pass(self):
        ray = cones_extremal_surface(CurveNumerics(3, 9)).boundary_ray.to_dict()
        assert isotropy_check(3, 9, ray)["status"] == "PASS"

    def test_fail(self):
        ray = {"H": {"a": "1", "b": "0", "radicand": "65"}, "E": {"a": "-1", "b": "0", "radicand": "65"}}
        assert isotropy_check(3, 9, ray)["status"] == "FAIL"


class TestDiscovery:
    def test_walk(self):
        assert len(list(walk({"a": [{"b": 1}, {"c": {"d": 2}}]}))) == 4

    def test_pell_outcomes(self, tampered_payload):
        assert len(pell_outcomes(tampered_payload)) == 1


# ─── Gate Runner ────────────────────────────────────────────────────────────

class TestGateRunner:
    def test_quartic_verdict_verifies(self, quartic_verdict):
        runner = GateRunner()
        results = runner.run_from_config(DEFAULT_GATES_PATH, context={"verdict": quartic_verdict})
        assert len(results) == 6
        by_name = {r["name"]: r for r in results}
        assert by_name["pell_sieve_exhaustion"]["status"] == "PASS"
        assert by_name["discriminant_nonsquare"]["status"] == "PASS"
        assert by_name["boundary_ray_isotropic"]["status"] == "PASS"
        assert by_name["pell_witnesses_valid"]["status"] == "SKIP"
        summary = runner.get_summary()
        assert summary["verified"] is True
        assert summary["failed"] == 0

    def test_linked_verdict_verifies(self):
        verdict = classify(CurveNumerics(47, 20), Evidence.general_linked(2, 5, 5, 5, acm=True))
        runner = GateRunner()
        results = runner.run_from_config(DEFAULT_GATES_PATH, context={"verdict": verdict})
        by_name = {r["name"]: r for r in results}
        assert by_name["recorded_inequalities"]["status"] == "PASS"
        assert runner.get_summary()["verified"] is True

    def test_tampered_witness_fails(self, tampered_payload):
        audit = MagicMock()
        runner = GateRunner(audit_logger=audit)
        runner.run_from_config(DEFAULT_GATES_PATH, context={"verdict": tampered_payload})
        summary = runner.get_summary()
        assert summary["verified"] is False
        assert summary["failed"] == 1
        audit.record_gate_failure.assert_called_once()

    def test_unknown_check_type(self):
        runner = GateRunner()
        results = runner.run_checks([{"name": "x", "check": "nope", "severity": "CRITICAL"}], {"verdict": {}})
        assert results[0]["status"] == "FAIL"
        assert "Unknown check type" in results[0]["details"]["error"]

    def test_no_verdict(self):
        runner = GateRunner()
        results = runner.run_checks([{"name": "w", "check": "witness", "severity": "CRITICAL"}])
        assert results[0]["status"] == "FAIL"
        assert runner.get_summary()["verified"] is False

    def test_missing_config(self, tmp_path):
        assert GateRunner().run_from_config(tmp_path / "missing.json") == []

    def test_warning_failure_keeps_verified(self):
        runner = GateRunner()
        payload = {
            "certificates": {
                "claim": {
                    "equation": {"D": 73, "N": -8},
                    "solvable": False,
                    "witness": None,
                    "certificate": {"kind": "FundamentalSearchExhausted"},
                },
            },
        }
        runner.run_checks([{"name": "bf", "check": "brute_force", "severity": "WARNING"}], {"verdict": payload})
        summary = runner.get_summary()
        assert summary["failed"] == 1
        assert summary["verified"] is True
