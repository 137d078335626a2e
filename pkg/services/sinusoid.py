"""Numeric crossing count for the sinusoid drawing of the counterexample cycles on the cylinder.

The cycle is the curve a -> (a mod 2pi, sin((kr+1)a/r)) for a in [0, 2pi r). Two arcs
meet where a' = a + 2pi m for a nonzero shift |m| < r and the heights agree.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from models.drawing import Pair, ParityVector
from services.canonical_drawing import independent_pairs
from services.cycles import generate_counterexample
from settings import MIN_SINUSOID_SAMPLES, get_settings

logger = logging.getLogger(__name__)

PARAMETER_TOLERANCE = 1e-9
TANGENCY_TOLERANCE = 1e-12


class ResolutionError(RuntimeError):
    """Sampling cannot separate a crossing from a tangency or an arc endpoint."""


@dataclass(frozen=True)
class SinusoidCurve:
    k: int
    r: int

    @property
    def n(self) -> int:
        return self.k * self.r

    @property
    def frequency(self) -> float:
        return (self.k * self.r + 1) / self.r

    def height(self, alpha: np.ndarray | float) -> np.ndarray | float:
        return np.sin(self.frequency * alpha)

    def arc(self, edge: int) -> Tuple[float, float]:
        """Parameter interval of edge ``edge`` (the last one closes the cycle at 2pi r)."""
        step = 2.0 * math.pi * self.r / (self.k * self.r + 1)
        start = edge * step
        end = 2.0 * math.pi * self.r if edge == self.n - 1 else (edge + 1) * step
        return start, end


def _bisect(curve: SinusoidCurve, shift: float, low: float, high: float) -> float:
    def gap(alpha: float) -> float:
        return float(curve.height(alpha) - curve.height(alpha + shift))

    low_value = gap(low)
    while high - low > PARAMETER_TOLERANCE:
        middle = 0.5 * (low + high)
        middle_value = gap(middle)
        if middle_value == 0.0:
            return middle
        if (middle_value < 0) == (low_value < 0):
            low, low_value = middle, middle_value
        else:
            high = middle
    return 0.5 * (low + high)


def _count_shifted(curve: SinusoidCurve, first: int, second: int, m: int, samples: int) -> int:
    """Crossings of arc ``first`` with arc ``second`` translated back by m turns."""
    shift = 2.0 * math.pi * m
    a0, a1 = curve.arc(first)
    b0, b1 = curve.arc(second)
    low = max(a0, b0 - shift)
    high = min(a1, b1 - shift)
    if high - low <= PARAMETER_TOLERANCE:
        return 0

    grid = np.linspace(low, high, samples)
    gap = curve.height(grid) - curve.height(grid + shift)
    if abs(gap[0]) < PARAMETER_TOLERANCE or abs(gap[-1]) < PARAMETER_TOLERANCE:
        raise ResolutionError(f"Arcs {first} and {second} meet at an arc endpoint (shift {m}).")

    signs = np.sign(gap)
    exact = np.flatnonzero(signs == 0)
    if exact.size:
        raise ResolutionError(f"Sample lands exactly on a crossing of arcs {first} and {second}.")
    changes = np.flatnonzero(signs[:-1] != signs[1:])

    magnitude = np.abs(gap)
    near_zero = np.flatnonzero(magnitude < TANGENCY_TOLERANCE)
    if near_zero.size and not changes.size:
        raise ResolutionError(f"Near-tangency between arcs {first} and {second}; increase samples.")

    roots: List[float] = [_bisect(curve, shift, float(grid[i]), float(grid[i + 1])) for i in changes]
    for root in roots:
        if root - low < PARAMETER_TOLERANCE or high - root < PARAMETER_TOLERANCE:
            raise ResolutionError(f"Crossing of arcs {first} and {second} is within tolerance of an endpoint.")
    for left, right in zip(roots, roots[1:]):
        if right - left < PARAMETER_TOLERANCE:
            raise ResolutionError(f"Disputed double crossing of arcs {first} and {second}.")
    return len(roots)


def _count_pair(curve: SinusoidCurve, pair: Pair, samples: int) -> int:
    first, second = pair
    total = 0
    for m in range(-(curve.r - 1), curve.r):
        if m == 0:
            continue
        total += _count_shifted(curve, first, second, m, samples)
    return total


def sinusoid_crossings(
    k: int,
    r: int,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
) -> Dict[Pair, int]:
    """Crossing counts for every independent edge pair of the generated (k, r) cycle."""
    settings = get_settings()
    sample_count = samples if samples is not None else settings.sinusoid_samples
    if sample_count < MIN_SINUSOID_SAMPLES:
        raise ValueError(f"At least {MIN_SINUSOID_SAMPLES} samples per arc are required.")
    graph = generate_counterexample(k, r).to_clustered_graph()
    curve = SinusoidCurve(k=k, r=r)
    pairs = independent_pairs(graph)
    pool = _build_pool(workers if workers is not None else settings.workers)
    counts = list(pool.map(lambda pair: _count_pair(curve, pair, sample_count), pairs))
    logger.info(
        "Counted sinusoid crossings",
        extra={"instance": f"k{k}-r{r}", "edge_count": curve.n, "reason": f"{sum(counts)} crossings"},
    )
    return dict(zip(pairs, counts))


def sinusoid_parity_vector(
    k: int,
    r: int,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
) -> ParityVector:
    counts = sinusoid_crossings(k, r, samples=samples, workers=workers)
    pairs = tuple(counts)
    return ParityVector.from_bits(pairs, (counts[pair] % 2 for pair in pairs))


@lru_cache
def _build_pool(workers: int) -> ThreadPoolExecutor:
    return ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sinusoid")
