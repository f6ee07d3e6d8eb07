"""
Generalized Pell Equations

Exact decision procedure for x² − D·y² = N with a certificate for every
answer:

- WitnessFound: an explicit (x, y), checked before it is returned.
- ModulusSieve(m): no residue pair mod m satisfies the congruence.
- SquareTestFailed: the N = 0 (or D = 0) case reduces to a perfect-square test.
- FundamentalSearchExhausted: every solution class has a representative in
  an explicit finite region and none was found there.

For non-square D the region is Nagell's bound on fundamental solutions,
computed from the unit (x₁, y₁) of x² − Dy² = 1:

    N > 0:  0 ≤ y ≤ ⌊√(N(x₁−1) / 2D)⌋
    N < 0:  ⌈√(−N / D)⌉ ≤ y ≤ ⌊√(−N(x₁+1) / 2D)⌋

Narrow regions are scanned directly. Wide ones (large units) go through
sympy's LMM continued-fraction solver, which returns one representative per
class and is exhaustive as well.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import isqrt
from typing import Any

from sympy.solvers.diophantine.diophantine import diop_DN

from mdscheck.arithmetic.surd import is_perfect_square
from mdscheck.errors import InvalidInput
from mdscheck.settings import get_settings

logger = logging.getLogger(__name__)


class CertificateKind(str, Enum):
    WITNESS_FOUND = "WitnessFound"
    MODULUS_SIEVE = "ModulusSieve"
    SQUARE_TEST_FAILED = "SquareTestFailed"
    FUNDAMENTAL_SEARCH_EXHAUSTED = "FundamentalSearchExhausted"


class SearchMethod(str, Enum):
    FUNDAMENTAL_REGION = "fundamental_region"
    LMM = "lmm"
    FACTOR_BOUND = "factor_bound"


@dataclass(frozen=True)
class PellProblem:
    """The equation x² − D·y² = N."""

    D: int
    N: int

    def __post_init__(self) -> None:
        if self.D < 0:
            raise InvalidInput(f"D must be non-negative, got {self.D}", {"D": self.D})

    def evaluate(self, x: int, y: int) -> int:
        return x * x - self.D * y * y

    def __str__(self) -> str:
        return f"x^2 - {self.D}y^2 = {self.N}"

    def to_dict(self) -> dict[str, int]:
        return {"D": self.D, "N": self.N}


@dataclass(frozen=True)
class PellCertificate:
    """
    Evidence behind a PellOutcome.

    `equation` is the problem the certificate speaks about: after the
    substitution x = scale·u it may differ from the original problem.
    """

    kind: CertificateKind
    equation: PellProblem
    scale: int = 1
    modulus: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind.value,
            "equation": self.equation.to_dict(),
            "scale": self.scale,
        }
        if self.modulus is not None:
            out["modulus"] = self.modulus
        if self.details:
            out["details"] = dict(self.details)
        return out

    def __str__(self) -> str:
        if self.kind == CertificateKind.MODULUS_SIEVE:
            return f"ModulusSieve({self.modulus}) on {self.equation}"
        return f"{self.kind.value} on {self.equation}"


@dataclass(frozen=True)
class PellOutcome:
    """Decision for one PellProblem."""

    problem: PellProblem
    solvable: bool
    witness: tuple[int, int] | None
    certificate: PellCertificate

    def __post_init__(self) -> None:
        if self.solvable:
            if self.witness is None:
                raise ValueError("solvable outcome without witness")
            x, y = self.witness
            if self.problem.evaluate(x, y) != self.problem.N or (x, y) == (0, 0):
                raise ValueError(f"invalid witness {self.witness} for {self.problem}")
        elif self.witness is not None:
            raise ValueError("unsolvable outcome carries a witness")

    def to_dict(self) -> dict[str, Any]:
        return {
            "equation": self.problem.to_dict(),
            "solvable": self.solvable,
            "witness": list(self.witness) if self.witness else None,
            "certificate": self.certificate.to_dict(),
        }


# ─── Building blocks ────────────────────────────────────────────────────────

@lru_cache(maxsize=8192)
def solve_unit(D: int) -> tuple[int, int]:
    """Minimal positive solution of x² − D·y² = 1 (continued fraction of √D)."""
    if D < 2 or is_perfect_square(D):
        raise InvalidInput(f"solve_unit needs a non-square D >= 2, got {D}", {"D": D})
    x, y = diop_DN(D, 1)[0]
    x, y = abs(int(x)), abs(int(y))
    assert x * x - D * y * y == 1
    return x, y


def reduce_even(problem: PellProblem) -> tuple[PellProblem, int]:
    """
    Substitute x = 2u while D ≡ N ≡ 0 (mod 4).

    x² ≡ 0 (mod 4) forces x even, so the reduced equation has exactly the
    solutions (x/2, y). Returns the reduced problem and the scale 2^k.
    """
    D, N, scale = problem.D, problem.N, 1
    while N != 0 and D % 4 == 0 and N % 4 == 0:
        D, N, scale = D // 4, N // 4, scale * 2
    if scale == 1:
        return problem, 1
    return PellProblem(D, N), scale


@lru_cache(maxsize=1024)
def _squares_mod(m: int) -> frozenset[int]:
    return frozenset(x * x % m for x in range(m))


def residue_obstructed(problem: PellProblem, m: int) -> bool:
    """True iff x² − Dy² ≡ N (mod m) has no solution over all residue pairs."""
    squares = _squares_mod(m)
    D, N = problem.D % m, problem.N % m
    return all((N + D * y * y) % m not in squares for y in range(m))


def sieve(problem: PellProblem, moduli: Sequence[int]) -> PellCertificate | None:
    """
    First modulus that rules the equation out, after the even reduction.

    A None result proves nothing.
    """
    for m in moduli:
        if m < 2:
            raise InvalidInput(f"sieve moduli must be >= 2, got {m}", {"modulus": m})
    reduced, scale = reduce_even(problem)
    for m in moduli:
        if residue_obstructed(reduced, m):
            logger.debug("Sieve hit: %s has no solution mod %d", reduced, m)
            return PellCertificate(
                kind=CertificateKind.MODULUS_SIEVE,
                equation=reduced,
                scale=scale,
                modulus=m,
            )
    return None


def nagell_bounds(problem: PellProblem, unit: tuple[int, int]) -> tuple[int, int]:
    """Inclusive y-range holding a representative of every solution class."""
    D, N = problem.D, problem.N
    x1 = unit[0]
    if N > 0:
        return 0, isqrt(N * (x1 - 1) // (2 * D))
    y_min = isqrt(-N // D)
    while D * y_min * y_min < -N:
        y_min += 1
    return y_min, isqrt(-N * (x1 + 1) // (2 * D))


# ─── Searches ───────────────────────────────────────────────────────────────

def _scan(problem: PellProblem, y_min: int, y_max: int) -> tuple[int, int] | None:
    D, N = problem.D, problem.N
    for y in range(y_min, y_max + 1):
        value = D * y * y + N
        if value < 0:
            continue
        x = isqrt(value)
        if x * x == value and (x, y) != (0, 0):
            return x, y
    return None


def _search_square(problem: PellProblem) -> tuple[tuple[int, int] | None, dict[str, Any]]:
    # (x − sy)(x + sy) = N bounds y by (|N| + 1) / 2s
    s = isqrt(problem.D)
    y_max = (abs(problem.N) + 1) // (2 * s)
    details = {"method": SearchMethod.FACTOR_BOUND.value, "y_min": 0, "y_max": y_max}
    return _scan(problem, 0, y_max), details


def _search_nonsquare(
    problem: PellProblem, search_limit: int
) -> tuple[tuple[int, int] | None, dict[str, Any]]:
    unit = solve_unit(problem.D)
    y_min, y_max = nagell_bounds(problem, unit)
    details: dict[str, Any] = {"unit": list(unit), "y_min": y_min, "y_max": y_max}

    if y_max - y_min <= search_limit:
        details["method"] = SearchMethod.FUNDAMENTAL_REGION.value
        return _scan(problem, y_min, y_max), details

    details["method"] = SearchMethod.LMM.value
    logger.debug("Region %d..%d too wide for %s; using LMM", y_min, y_max, problem)
    candidates = []
    for x, y in diop_DN(problem.D, problem.N):
        x, y = abs(int(x)), abs(int(y))
        if problem.evaluate(x, y) == problem.N:
            candidates.append((y, x))
    if not candidates:
        return None, details
    y, x = min(candidates)
    return (x, y), details


# ─── Decision ───────────────────────────────────────────────────────────────

def decide(
    problem: PellProblem,
    moduli: Sequence[int] | None = None,
    search_limit: int | None = None,
) -> PellOutcome:
    """
    Decide solvability of x² − Dy² = N. Total: never raises for valid input.

    For N = 0 only nontrivial solutions count, so the answer is the
    perfect-square test on D.
    """
    if moduli is None or search_limit is None:
        settings = get_settings()
        moduli = settings.sieve_moduli if moduli is None else moduli
        search_limit = settings.search_limit if search_limit is None else search_limit

    D, N = problem.D, problem.N

    if N == 0:
        if is_perfect_square(D):
            return _solved(problem, (isqrt(D), 1), problem, 1, {})
        return _unsolved(problem, CertificateKind.SQUARE_TEST_FAILED, problem, 1,
                         {"floor_sqrt": isqrt(D)})

    if D == 0:
        if N > 0 and is_perfect_square(N):
            return _solved(problem, (isqrt(N), 0), problem, 1, {})
        details = {"floor_sqrt": isqrt(N)} if N > 0 else {"negative": True}
        return _unsolved(problem, CertificateKind.SQUARE_TEST_FAILED, problem, 1, details)

    certificate = sieve(problem, moduli)
    if certificate is not None:
        return PellOutcome(problem, False, None, certificate)

    reduced, scale = reduce_even(problem)
    if is_perfect_square(reduced.D):
        found, details = _search_square(reduced)
    else:
        found, details = _search_nonsquare(reduced, search_limit)

    if found is None:
        return _unsolved(problem, CertificateKind.FUNDAMENTAL_SEARCH_EXHAUSTED,
                         reduced, scale, details)
    u, y = found
    return _solved(problem, (scale * u, y), reduced, scale, details)


def _solved(problem, witness, equation, scale, details) -> PellOutcome:
    certificate = PellCertificate(CertificateKind.WITNESS_FOUND, equation, scale, details=details)
    return PellOutcome(problem, True, witness, certificate)


def _unsolved(problem, kind, equation, scale, details) -> PellOutcome:
    certificate = PellCertificate(kind, equation, scale, details=details)
    return PellOutcome(problem, False, None, certificate)


def is_solvable(D: int, N: int) -> bool:
    """Shorthand for decide(PellProblem(D, N)).solvable."""
    return decide(PellProblem(D, N)).solvable
