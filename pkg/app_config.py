#!/usr/bin/env python3
"""
Configuration for QEC Coding Maps
Reads tunables from the environment (optionally via a .env file) and sets up logging
"""

import os
import logging
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()

# The dense oracle never goes past this, whatever the environment says
HARD_ORACLE_LIMIT = 5


@dataclass(frozen=True)
class Settings:
    """Runtime tunables"""
    log_level: str = "WARNING"
    compose_term_cap: int = 20000
    fixed_point_grid: int = 10000
    max_oracle_qubits: int = HARD_ORACLE_LIMIT
    precision: int = 6


def _int_from_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer, using {default}")
        return default
    if value < minimum:
        logger.warning(f"Ignoring {name}={value}: must be >= {minimum}, using {default}")
        return default
    return value


def load_settings() -> Settings:
    """Build Settings from QEC_* environment variables"""
    level = os.getenv("QEC_LOG_LEVEL", "WARNING").upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        logger.warning(f"Unknown QEC_LOG_LEVEL {level!r}, using WARNING")
        level = "WARNING"

    max_oracle = _int_from_env("QEC_MAX_ORACLE_QUBITS", HARD_ORACLE_LIMIT)
    if max_oracle > HARD_ORACLE_LIMIT:
        logger.warning(f"QEC_MAX_ORACLE_QUBITS={max_oracle} clamped to {HARD_ORACLE_LIMIT}")
        max_oracle = HARD_ORACLE_LIMIT

    return Settings(
        log_level=level,
        compose_term_cap=_int_from_env("QEC_COMPOSE_TERM_CAP", 20000),
        fixed_point_grid=_int_from_env("QEC_FIXED_POINT_GRID", 10000, minimum=10),
        max_oracle_qubits=max_oracle,
        precision=_int_from_env("QEC_PRECISION", 6),
    )


settings = load_settings()


def configure_logging(level: str = None):
    """Configure root logging for command-line use (library code never calls this)"""
    logging.basicConfig(
        level=level or settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
