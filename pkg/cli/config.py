from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from settings import MIN_SINUSOID_SAMPLES, get_settings

DEFAULT_BUDGET = 2_000_000
DEFAULT_SAMPLES = 20_000
DEFAULT_WORKERS = 4


@dataclass(frozen=True)
class CLIConfig:
    log_level: str = "INFO"
    budget: int = DEFAULT_BUDGET
    samples: int = DEFAULT_SAMPLES
    workers: int = DEFAULT_WORKERS
    seed: int = 0


def _read_positive(value: Optional[int], default: int, minimum: int = 1) -> int:
    if value is None:
        return default
    return value if value >= minimum else default


def load_config(
    log_level: Optional[str] = None,
    budget: Optional[int] = None,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
    seed: Optional[int] = None,
) -> CLIConfig:
    """Flags first, then the environment (through ``get_settings``), then defaults."""
    settings = get_settings()
    level = (log_level or "").strip().upper() or settings.log_level
    return CLIConfig(
        log_level=level,
        budget=_read_positive(budget, settings.oracle_budget),
        samples=_read_positive(samples, settings.sinusoid_samples, minimum=MIN_SINUSOID_SAMPLES),
        workers=_read_positive(workers, settings.workers),
        seed=_read_positive(seed, settings.seed, minimum=0),
    )
