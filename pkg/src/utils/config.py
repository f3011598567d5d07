"""
Runtime settings read from the environment (.env supported).
"""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    oracle_budget: int = 32
    samples_per_region: int = 1
    report_digits: int = 12
    render_samples: int = 400
    log_level: str = "WARNING"
    log_file: str = None


def _int_setting(name, default, minimum):
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"⚠️  {name}={raw!r} is not an integer, using {default}")
        return default
    if value < minimum:
        logger.warning(f"⚠️  {name}={value} is below {minimum}, using {default}")
        return default
    return value


def load_settings():
    """Settings from LINLIKE_* environment variables, defaults otherwise"""
    load_dotenv()
    return Settings(
        oracle_budget=_int_setting("LINLIKE_ORACLE_BUDGET", 32, 1),
        samples_per_region=_int_setting("LINLIKE_SAMPLES_PER_REGION", 1, 1),
        report_digits=_int_setting("LINLIKE_REPORT_DIGITS", 12, 1),
        render_samples=_int_setting("LINLIKE_RENDER_SAMPLES", 400, 16),
        log_level=os.getenv("LINLIKE_LOG_LEVEL", "WARNING").upper(),
        log_file=os.getenv("LINLIKE_LOG_FILE") or None,
    )
