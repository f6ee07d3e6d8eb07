"""
Certificate Checks

Independent re-verification of the evidence attached to verdicts. Each check
recomputes its fact from the raw numbers in a certificate, without calling the
decision procedure that produced it, and returns a result dict with: name,
check_type, status (PASS/FAIL/WARN/SKIP), details.
"""

import logging
import operator
from collections.abc import Iterator
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Any

from mdscheck.arithmetic.surd import QuadraticSurd

logger = logging.getLogger(__name__)


class Severity(str, Enum):
    CRITICAL = "CRITICAL"
    WARNING = "WARNING"
    INFO = "INFO"


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    WARN = "WARN"
    SKIP = "SKIP"


_RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
}


def _result(name: str, check_type: str, status: CheckStatus, details: dict) -> dict:
    return {"name": name, "check_type": check_type, "status": status.value, "details": details}


def skipped(name: str, check_type: str, reason: str) -> dict:
    return _result(name, check_type, CheckStatus.SKIP, {"reason": reason})


# ─── Pell certificates ──────────────────────────────────────────────────────

def witness_check(D: int, N: int, witness: list[int] | tuple[int, int], name: str = "witness_check") -> dict:
    """x² − Dy² = N for the claimed witness."""
    x, y = witness
    value = x * x - D * y * y
    status = CheckStatus.PASS if value == N and (x, y) != (0, 0) else CheckStatus.FAIL
    return _result(name, "witness", status, {"D": D, "N": N, "witness": [x, y], "value": value})


def sieve_check(
    D: int,
    N: int,
    modulus: int,
    reduced: tuple[int, int] | None = None,
    scale: int = 1,
    name: str = "sieve_check",
) -> dict:
    """
    No residue pair (x, y) mod m satisfies the (reduced) congruence.

    The reduced equation must come from x = scale·u, i.e. D = scale²·D′ and
    N = scale²·N′.
    """
    D_red, N_red = reduced if reduced is not None else (D, N)
    details: dict[str, Any] = {"D": D, "N": N, "modulus": modulus, "reduced": [D_red, N_red], "scale": scale}
    if scale < 1 or D != scale * scale * D_red or N != scale * scale * N_red:
        details["error"] = "reduction does not match the original equation"
        return _result(name, "sieve", CheckStatus.FAIL, details)
    if scale & (scale - 1):
        details["error"] = "scale must be a power of two"
        return _result(name, "sieve", CheckStatus.FAIL, details)

    hits = [
        (x, y)
        for x in range(modulus)
        for y in range(modulus)
        if (x * x - D_red * y * y - N_red) % modulus == 0
    ]
    details["residue_solutions"] = len(hits)
    return _result(name, "sieve", CheckStatus.FAIL if hits else CheckStatus.PASS, details)


def nonsquare_check(r: int, name: str = "nonsquare_check") -> dict:
    """s² < r < (s + 1)² with s = ⌊√r⌋."""
    s = isqrt(r) if r >= 0 else -1
    square = r >= 0 and s * s == r
    details = {"r": r, "floor_sqrt": s}
    return _result(name, "nonsquare", CheckStatus.FAIL if square else CheckStatus.PASS, details)


def brute_force_check(D: int, N: int, y_limit: int = 2000, name: str = "brute_force_check") -> dict:
    """
    Bounded search corroborating an unsolvability claim.

    Passing proves nothing beyond the bound; a hit refutes the claim.
    """
    for y in range(y_limit + 1):
        value = D * y * y + N
        if value < 0:
            continue
        x = isqrt(value)
        if x * x == value and (x, y) != (0, 0):
            return _result(name, "brute_force", CheckStatus.FAIL,
                           {"D": D, "N": N, "y_limit": y_limit, "solution": [x, y]})
    return _result(name, "brute_force", CheckStatus.PASS, {"D": D, "N": N, "y_limit": y_limit})


# ─── Inequalities and rays ──────────────────────────────────────────────────

def inequality_check(inequalities: list[dict], name: str = "inequality_check") -> dict:
    """Re-evaluate every recorded relation and compare with the recorded verdict."""
    failed = []
    for item in inequalities:
        relation = _RELATIONS.get(item["relation"])
        holds = relation is not None and relation(int(item["value"]), int(item["bound"]))
        if holds != item.get("holds", True):
            failed.append({"name": item["name"], "recorded": item.get("holds"), "recomputed": holds})
    status = CheckStatus.FAIL if failed else CheckStatus.PASS
    return _result(name, "inequality", status, {"checked": len(inequalities), "mismatches": failed})


def _surd(data: dict[str, str]) -> QuadraticSurd:
    return QuadraticSurd(Fraction(data["a"]), Fraction(data["b"]), int(data["radicand"]))


def isotropy_check(g: int, d: int, ray: dict[str, dict[str, str]], name: str = "isotropy_check") -> dict:
    """
    The boundary ray mH + nC has square 4m² + 2dmn + (2g − 2)n² = 0, and it is
    irrational exactly when r = d² − 8(g − 1) is not a square.
    """
    m, n = _surd(ray["H"]), _surd(ray["E"])
    square = m * m * 4 + m * n * (2 * d) + n * n * (2 * g - 2)
    r = d * d - 8 * (g - 1)
    irrational = not (m.is_rational and n.is_rational)
    expected_irrational = isqrt(r) ** 2 != r
    details = {"square": str(square), "irrational": irrational, "r": r}
    ok = square == 0 and irrational == expected_irrational
    return _result(name, "isotropy", CheckStatus.PASS if ok else CheckStatus.FAIL, details)


# ─── Certificate discovery ──────────────────────────────────────────────────

def walk(payload: Any) -> Iterator[dict]:
    """Every dict nested anywhere inside payload, depth first."""
    if isinstance(payload, dict):
        yield payload
        for value in payload.values():
            yield from walk(value)
    elif isinstance(payload, (list, tuple)):
        for value in payload:
            yield from walk(value)


def pell_outcomes(payload: Any) -> list[dict]:
    return [item for item in walk(payload) if {"equation", "solvable", "certificate"} <= item.keys()]


def inequality_records(payload: Any) -> list[dict]:
    keys = {"name", "expression", "value", "relation", "bound"}
    return [item for item in walk(payload) if keys <= item.keys()]
