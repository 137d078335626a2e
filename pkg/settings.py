from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache


_ORACLE_BUDGET_ENV = "CPLANARITY_ORACLE_BUDGET"
_SINUSOID_SAMPLES_ENV = "CPLANARITY_SINUSOID_SAMPLES"
_WORKER_COUNT_ENV = "CPLANARITY_WORKERS"
_SEED_ENV = "CPLANARITY_SEED"
_LOG_LEVEL_ENV = "LOG_LEVEL"

MIN_SINUSOID_SAMPLES = 10_000


@dataclass(frozen=True)
class Settings:
    oracle_budget: int
    sinusoid_samples: int
    workers: int
    seed: int
    log_level: str


def _read_positive_int(name: str, default: int, minimum: int = 1) -> int:
    value = os.getenv(name)
    if value is None:
        return default
    candidate = value.strip()
    if not candidate:
        return default
    try:
        parsed = int(candidate)
    except ValueError:
        return default
    return parsed if parsed >= minimum else default


def _read_seed(default: int) -> int:
    value = os.getenv(_SEED_ENV)
    if value is None:
        return default
    candidate = value.strip()
    if not candidate:
        return default
    try:
        parsed = int(candidate)
    except ValueError:
        return default
    return parsed if parsed >= 0 else default


def _read_log_level(default: str) -> str:
    value = os.getenv(_LOG_LEVEL_ENV)
    if value is None:
        return default
    candidate = value.strip()
    if not candidate:
        return default
    return candidate.upper()


@lru_cache
def get_settings() -> Settings:
    return Settings(
        oracle_budget=_read_positive_int(_ORACLE_BUDGET_ENV, 2_000_000),
        sinusoid_samples=_read_positive_int(
            _SINUSOID_SAMPLES_ENV, 20_000, minimum=MIN_SINUSOID_SAMPLES
        ),
        workers=_read_positive_int(_WORKER_COUNT_ENV, 4),
        seed=_read_seed(0),
        log_level=_read_log_level("INFO"),
    )
