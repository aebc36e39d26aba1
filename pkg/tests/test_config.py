"""Tests for the config module."""

import logging

import pytest

from sosggm.config import Settings, get_log_level, get_settings
from sosggm.exceptions import BallTooLarge
from sosggm.ggm import build_ball


def test_defaults():
    """Test the default tolerances and guards."""
    settings = Settings()
    assert settings.THREADS == 4
    assert settings.MAX_RADIUS == 8
    assert settings.MAX_ENUMERATION == 10**7
    assert settings.RESIDUAL_TOL == 1e-9


def test_environment_override(monkeypatch):
    """Test that SOSGGM_-prefixed variables override the defaults."""
    monkeypatch.setenv("SOSGGM_THREADS", "2")
    monkeypatch.setenv("SOSGGM_MAX_RADIUS", "3")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.THREADS == 2
    assert settings.MAX_RADIUS == 3


def test_settings_are_cached():
    """Test the settings singleton."""
    assert get_settings() is get_settings()


def test_log_level(monkeypatch):
    """Test the mapping of LOG_LEVEL names to logging levels."""
    monkeypatch.setenv("SOSGGM_LOG_LEVEL", "debug")
    get_settings.cache_clear()
    assert get_log_level() == logging.DEBUG
    monkeypatch.setenv("SOSGGM_LOG_LEVEL", "chatty")
    get_settings.cache_clear()
    assert get_log_level() == logging.WARNING


def test_radius_limit_follows_settings(monkeypatch):
    """Test that the ball guard reads the current settings."""
    monkeypatch.setenv("SOSGGM_MAX_RADIUS", "1")
    get_settings.cache_clear()
    assert len(build_ball(2, 1).edges) == 9
    with pytest.raises(BallTooLarge):
        build_ball(2, 2)
