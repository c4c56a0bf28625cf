"""Exhaustive enumeration of short simple-random-walk paths."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from excursionlab.errors import ParameterError
from excursionlab.models import Trajectory
from excursionlab.walk import derive_seed, generate_walk

EXHAUSTIVE_LIMIT = 20


def all_increments(n: int) -> np.ndarray:
    """All 2^n step sequences as rows; bit j of the row index is step j + 1."""
    if n < 0 or n > EXHAUSTIVE_LIMIT:
        raise ParameterError(f"Exhaustive enumeration needs 0 <= n <= {EXHAUSTIVE_LIMIT}, got {n}")
    rows = np.arange(1 << n, dtype=np.int64)[:, None]
    bits = (rows >> np.arange(n, dtype=np.int64)) & 1
    return (2 * bits - 1).astype(np.int8)


def all_positions(n: int) -> np.ndarray:
    """Positions S_0..S_n of every path of length n, one row per path."""
    steps = all_increments(n)
    positions = np.zeros((steps.shape[0], n + 1), dtype=np.int64)
    positions[:, 1:] = np.cumsum(steps, axis=1, dtype=np.int64)
    return positions


def exhaustive_corpus(n: int) -> Iterator[Trajectory]:
    for steps in all_increments(n):
        yield Trajectory.from_increments(steps)


def random_corpus(seed: int, task: str, count: int, length: int) -> Iterator[Trajectory]:
    """``count`` independent walks, trial i seeded by derive_seed(seed, task, i)."""
    for trial in range(count):
        yield generate_walk(derive_seed(seed, task, trial), length, trial=trial)
