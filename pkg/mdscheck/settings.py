"""
Runtime Settings

Tunables for the decision procedures, read from MDSCHECK_* environment
variables with defaults suited to desk-scale scans. Nothing here is required
to run the tool.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

# ─── Defaults ───────────────────────────────────────────────────────────────
# 5 first so the (20n+1, 5n) family reports its mod-5 certificate
DEFAULT_SIEVE_MODULI: tuple[int, ...] = (5, 3, 4, 7, 8, 9, 11, 13, 16)
DEFAULT_SEARCH_LIMIT = 2000  # widest y-range scanned directly before LMM
DEFAULT_SCAN_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"
DEFAULT_GATES_PATH = CONFIG_DIR / "verification_gates.json"


def _parse_moduli(raw: str) -> tuple[int, ...]:
    moduli = tuple(int(part) for part in raw.split(",") if part.strip())
    if not moduli or any(m < 2 for m in moduli):
        raise ValueError(f"sieve moduli must be integers >= 2, got {raw!r}")
    return moduli


@dataclass(frozen=True)
class Settings:
    """Resolved runtime configuration."""

    sieve_moduli: tuple[int, ...] = DEFAULT_SIEVE_MODULI
    search_limit: int = DEFAULT_SEARCH_LIMIT
    scan_workers: int = DEFAULT_SCAN_WORKERS
    log_level: str = DEFAULT_LOG_LEVEL
    report_dir: Path | None = None
    gates_path: Path = field(default=DEFAULT_GATES_PATH)

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> "Settings":
        """
        Build settings from environment variables.

        Unparseable values fall back to the default with a warning.
        """
        env = os.environ if environ is None else environ

        moduli = DEFAULT_SIEVE_MODULI
        if env.get("MDSCHECK_SIEVE_MODULI"):
            try:
                moduli = _parse_moduli(env["MDSCHECK_SIEVE_MODULI"])
            except ValueError as exc:
                logger.warning("Ignoring MDSCHECK_SIEVE_MODULI: %s", exc)

        search_limit = _int_from_env(env, "MDSCHECK_SEARCH_LIMIT", DEFAULT_SEARCH_LIMIT)
        workers = _int_from_env(env, "MDSCHECK_SCAN_WORKERS", DEFAULT_SCAN_WORKERS)
        report_dir = env.get("MDSCHECK_REPORT_DIR") or None

        return cls(
            sieve_moduli=moduli,
            search_limit=max(search_limit, 0),
            scan_workers=max(workers, 1),
            log_level=env.get("MDSCHECK_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
            report_dir=Path(report_dir) if report_dir else None,
        )


def _int_from_env(env, name: str, default: int) -> int:
    raw = env.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer)", name, raw)
        return default


def get_settings() -> Settings:
    """Settings for the current process environment."""
    return Settings.from_env()
