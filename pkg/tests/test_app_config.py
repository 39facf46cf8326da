"""
Tests for environment-driven settings.
"""
import logging

import pytest

import app_config
from app_config import HARD_ORACLE_LIMIT, load_settings


def test_defaults(monkeypatch):
    for name in ("QEC_LOG_LEVEL", "QEC_COMPOSE_TERM_CAP", "QEC_FIXED_POINT_GRID",
                 "QEC_MAX_ORACLE_QUBITS", "QEC_PRECISION"):
        monkeypatch.delenv(name, raising=False)
    s = load_settings()
    assert s.log_level == "WARNING"
    assert s.compose_term_cap == 20000
    assert s.fixed_point_grid == 10000
    assert s.max_oracle_qubits == HARD_ORACLE_LIMIT
    assert s.precision == 6


def test_overrides(monkeypatch):
    monkeypatch.setenv("QEC_LOG_LEVEL", "debug")
    monkeypatch.setenv("QEC_COMPOSE_TERM_CAP", "500")
    monkeypatch.setenv("QEC_PRECISION", "9")
    s = load_settings()
    assert s.log_level == "DEBUG"
    assert s.compose_term_cap == 500
    assert s.precision == 9


@pytest.mark.parametrize("name,value,expected_attr,expected", [
    ("QEC_COMPOSE_TERM_CAP", "lots", "compose_term_cap", 20000),
    ("QEC_FIXED_POINT_GRID", "3", "fixed_point_grid", 10000),
    ("QEC_PRECISION", "0", "precision", 6),
])
def test_bad_values_fall_back(monkeypatch, caplog, name, value, expected_attr, expected):
    monkeypatch.setenv(name, value)
    with caplog.at_level(logging.WARNING, logger="app_config"):
        s = load_settings()
    assert getattr(s, expected_attr) == expected
    assert name in caplog.text


def test_oracle_limit_is_clamped(monkeypatch):
    monkeypatch.setenv("QEC_MAX_ORACLE_QUBITS", "9")
    assert load_settings().max_oracle_qubits == HARD_ORACLE_LIMIT
    monkeypatch.setenv("QEC_MAX_ORACLE_QUBITS", "3")
    assert load_settings().max_oracle_qubits == 3


def test_unknown_log_level(monkeypatch):
    monkeypatch.setenv("QEC_LOG_LEVEL", "chatty")
    assert load_settings().log_level == "WARNING"


def test_settings_are_frozen():
    with pytest.raises(Exception):
        app_config.settings.precision = 3
