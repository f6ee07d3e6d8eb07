"""Tests for settings.py"""

import logging
from pathlib import Path

import pytest

from mdscheck.settings import (
    DEFAULT_GATES_PATH,
    DEFAULT_SEARCH_LIMIT,
    DEFAULT_SIEVE_MODULI,
    Settings,
    get_settings,
)


class TestDefaults:
    def test_empty_environment(self):
        settings = Settings.from_env({})
        assert settings.sieve_moduli == DEFAULT_SIEVE_MODULI
        assert settings.sieve_moduli[0] == 5
        assert settings.search_limit == DEFAULT_SEARCH_LIMIT == 2000
        assert settings.scan_workers == 1
        assert settings.log_level == "WARNING"
        assert settings.report_dir is None

    def test_gates_config_ships_with_package(self):
        assert Settings().gates_path == DEFAULT_GATES_PATH
        assert DEFAULT_GATES_PATH.name == "verification_gates.json"
        assert DEFAULT_GATES_PATH.exists()

    def test_get_settings_reads_process_env(self, monkeypatch):
        monkeypatch.setenv("MDSCHECK_SEARCH_LIMIT", "50")
        assert get_settings().search_limit == 50


class TestFromEnv:
    def test_overrides(self):
        settings = Settings.from_env({
            "MDSCHECK_SIEVE_MODULI": "3, 8",
            "MDSCHECK_SEARCH_LIMIT": "100",
            "MDSCHECK_SCAN_WORKERS": "4",
            "MDSCHECK_LOG_LEVEL": "debug",
            "MDSCHECK_REPORT_DIR": "/tmp/mds",
        })
        assert settings.sieve_moduli == (3, 8)
        assert settings.search_limit == 100
        assert settings.scan_workers == 4
        assert settings.log_level == "DEBUG"
        assert settings.report_dir == Path("/tmp/mds")

    @pytest.mark.parametrize("raw", ["1,2", "x", "5,,0"])
    def test_bad_moduli_fall_back(self, raw, caplog):
        with caplog.at_level(logging.WARNING, logger="mdscheck.settings"):
            settings = Settings.from_env({"MDSCHECK_SIEVE_MODULI": raw})
        assert settings.sieve_moduli == DEFAULT_SIEVE_MODULI
        assert "MDSCHECK_SIEVE_MODULI" in caplog.text

    def test_bad_integer_falls_back(self, caplog):
        with caplog.at_level(logging.WARNING, logger="mdscheck.settings"):
            settings = Settings.from_env({"MDSCHECK_SEARCH_LIMIT": "lots"})
        assert settings.search_limit == DEFAULT_SEARCH_LIMIT
        assert "MDSCHECK_SEARCH_LIMIT" in caplog.text

    def test_clamping(self):
        settings = Settings.from_env({"MDSCHECK_SEARCH_LIMIT": "-5", "MDSCHECK_SCAN_WORKERS": "0"})
        assert settings.search_limit == 0
        assert settings.scan_workers == 1

    def test_blank_values_use_defaults(self):
        settings = Settings.from_env({"MDSCHECK_SCAN_WORKERS": "", "MDSCHECK_REPORT_DIR": ""})
        assert settings.scan_workers == 1
        assert settings.report_dir is None
