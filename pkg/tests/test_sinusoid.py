from __future__ import annotations

import math

import pytest

from services.sinusoid import SinusoidCurve, sinusoid_crossings, sinusoid_parity_vector
from settings import MIN_SINUSOID_SAMPLES


def test_curve_arcs_cover_r_turns() -> None:
    curve = SinusoidCurve(k=3, r=3)

    assert curve.n == 9
    assert curve.arc(0)[0] == 0.0
    assert curve.arc(8)[1] == pytest.approx(2 * math.pi * 3)
    assert curve.arc(1)[0] == pytest.approx(curve.arc(0)[1])


def test_vertices_sit_on_the_middle_line() -> None:
    curve = SinusoidCurve(k=3, r=5)

    for edge in range(curve.n):
        assert curve.height(curve.arc(edge)[0]) == pytest.approx(0.0, abs=1e-9)


def test_single_turn_has_no_crossings() -> None:
    counts = sinusoid_crossings(4, 1, samples=MIN_SINUSOID_SAMPLES, workers=1)

    assert counts == {(0, 2): 0, (1, 3): 0}


@pytest.mark.parametrize("k, r", [(3, 3), (3, 5), (5, 3)])
def test_sinusoid_drawing_is_independently_even(k: int, r: int) -> None:
    vector = sinusoid_parity_vector(k, r, samples=MIN_SINUSOID_SAMPLES, workers=2)

    assert vector.dimension == k * r * (k * r - 3) // 2
    assert vector.is_zero


def test_sinusoid_drawing_has_crossings() -> None:
    counts = sinusoid_crossings(3, 3, samples=MIN_SINUSOID_SAMPLES, workers=2)

    assert len(counts) == 27
    assert sum(counts.values()) > 0


def test_too_few_samples_are_rejected() -> None:
    with pytest.raises(ValueError):
        sinusoid_crossings(3, 3, samples=MIN_SINUSOID_SAMPLES - 1)
