"""Environment-driven settings."""

import logging
import os
from dataclasses import dataclass

from stringy_engine.errors import InvalidParams

DEFAULT_MAX_DIM = 8
DEFAULT_JOBS = 1
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """Runtime settings.

    Attributes:
        max_dim: Largest dimension the WPS family materializes as a polytope
        jobs: Worker count for batch mode
        log_level: Name of the default logging level
    """

    max_dim: int = DEFAULT_MAX_DIM
    jobs: int = DEFAULT_JOBS
    log_level: str = DEFAULT_LOG_LEVEL


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise InvalidParams(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise InvalidParams(f"{name} must be at least {minimum}, got {value}")
    return value


def get_settings() -> Settings:
    """Read settings from the environment.

    Returns:
        Settings built from STRINGY_MAX_DIM, STRINGY_JOBS and STRINGY_LOG_LEVEL

    Raises:
        InvalidParams: If a variable holds an unusable value
    """
    level = os.environ.get("STRINGY_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise InvalidParams(f"STRINGY_LOG_LEVEL is not a logging level: {level!r}")
    return Settings(
        max_dim=_int_from_env("STRINGY_MAX_DIM", DEFAULT_MAX_DIM, 1),
        jobs=_int_from_env("STRINGY_JOBS", DEFAULT_JOBS, -1),
        log_level=level,
    )
