"""Resampling helpers shared by the Monte Carlo checks."""

from __future__ import annotations

from typing import Callable

import numpy as np

from excursionlab.errors import ParameterError
from excursionlab.walk import derive_seed

Statistic = Callable[..., np.ndarray]


def generator(seed: int, task: str) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=derive_seed(seed, task, 0)))


def bootstrap_interval(
    values: np.ndarray,
    statistic: Statistic = np.mean,
    *,
    resamples: int,
    seed: int,
    task: str,
    level: float = 0.95,
) -> tuple[float, float]:
    """Percentile bootstrap interval; ``statistic`` must accept ``axis=1``."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ParameterError("Cannot bootstrap an empty sample")
    rng = generator(seed, f"{task}/bootstrap")
    draws = values[rng.integers(0, values.size, size=(resamples, values.size))]
    estimates = statistic(draws, axis=1)
    tail = 50 * (1 - level)
    low, high = np.percentile(estimates, [tail, 100 - tail])
    return float(low), float(high)


def central_band(values: np.ndarray, mass: float = 0.99) -> tuple[float, float]:
    """Smallest symmetric-quantile interval holding ``mass`` of the sample."""
    tail = 50 * (1 - mass)
    low, high = np.percentile(values, [tail, 100 - tail])
    return float(low), float(high)


def standard_error(values: np.ndarray) -> float:
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1) / np.sqrt(values.size))
