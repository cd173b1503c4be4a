"""Tests for environment-driven settings."""

import pytest
from pydantic import ValidationError

from pqtrig.config import get_settings, reset_settings
from pqtrig.verify import SuiteConfig, run_suite


class TestSettings:
    def test_defaults(self):
        s = get_settings()
        assert s.quad_tolerance == 1e-13
        assert s.verify_tolerance == 1e-9
        assert s.y_cap == 1.0 - 1e-15

    def test_cached(self):
        assert get_settings() is get_settings()

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("PQTRIG_VERIFY_TOLERANCE", "1e-7")
        reset_settings()
        assert get_settings().verify_tolerance == 1e-7

    def test_env_validated(self, monkeypatch):
        monkeypatch.setenv("PQTRIG_QUAD_TOLERANCE", "-1")
        reset_settings()
        with pytest.raises(ValidationError):
            get_settings()

    def test_suite_uses_configured_tolerance(self, monkeypatch):
        monkeypatch.setenv("PQTRIG_VERIFY_TOLERANCE", "1e-6")
        reset_settings()
        config = SuiteConfig.empty().model_copy(update={"special_values": True})
        assert {r.tolerance for r in run_suite(config=config)} == {1e-6}
