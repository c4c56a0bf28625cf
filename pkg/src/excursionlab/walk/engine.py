"""Simple-random-walk generation, streaming and per-site bookkeeping."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Protocol

import numpy as np

from excursionlab.errors import HorizonError, ParameterError
from excursionlab.models import LocalTimeField, Trajectory, TrajectorySummary
from excursionlab.walk.rng import BLOCK_STEPS, PhiloxIncrements
from excursionlab.walk.sites import SiteArray

logger = logging.getLogger(__name__)

MATERIALIZE_LIMIT = 1 << 24


class IncrementSource(Protocol):
    """Addressable blocks of ±1 steps."""

    block_steps: int

    def block(self, index: int) -> np.ndarray: ...


@dataclass(slots=True, frozen=True)
class PositionBlock:
    """Positions S_start, ..., S_{start + len - 1}; the first block starts with S_0."""

    start: int
    positions: np.ndarray

    @property
    def stop(self) -> int:
        """Time of the last position in the block."""
        return self.start + int(self.positions.shape[0]) - 1


def _source(seed: int, trial: int, source: IncrementSource | None) -> IncrementSource:
    return source if source is not None else PhiloxIncrements(seed, trial)


def iter_increments(source: IncrementSource, n: int, chunk: int) -> Iterator[np.ndarray]:
    """Yield steps 1..n in pieces of ``chunk`` (the last piece may be shorter)."""
    if chunk < 1:
        raise ParameterError(f"chunk must be positive, got {chunk}")
    pending: list[np.ndarray] = []
    pending_len = 0
    block_index = 0
    emitted = 0
    while emitted < n:
        need = min(chunk, n - emitted)
        while pending_len < need:
            fresh = source.block(block_index)
            block_index += 1
            pending.append(fresh)
            pending_len += fresh.shape[0]
        buffer = pending[0] if len(pending) == 1 else np.concatenate(pending)
        rest = buffer[need:]
        pending = [rest] if rest.size else []
        pending_len = int(rest.shape[0])
        emitted += need
        yield buffer[:need]


def generate_walk(
    seed: int,
    n: int,
    *,
    trial: int = 0,
    source: IncrementSource | None = None,
    limit: int = MATERIALIZE_LIMIT,
) -> Trajectory:
    """Materialize the walk of ``n`` steps addressed by (seed, trial)."""
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    if n > limit:
        raise ParameterError(f"n = {n} exceeds the materialization limit {limit}; use stream_walk")
    pieces = list(iter_increments(_source(seed, trial, source), n, max(n, 1)))
    steps = pieces[0] if pieces else np.zeros(0, dtype=np.int8)
    return Trajectory.from_increments(steps, seed=seed, trial=trial)


def stream_walk(
    seed: int,
    n: int,
    *,
    trial: int = 0,
    chunk: int = BLOCK_STEPS,
    source: IncrementSource | None = None,
) -> Iterator[PositionBlock]:
    """Yield the positions S_0..S_n in consecutive blocks of at most ``chunk`` steps."""
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    logger.debug("Streaming %d steps for seed=%d trial=%d", n, seed, trial)
    if n == 0:
        yield PositionBlock(start=0, positions=np.zeros(1, dtype=np.int64))
        return

    position = 0
    time = 0
    for steps in iter_increments(_source(seed, trial, source), n, chunk):
        walked = position + np.cumsum(steps, dtype=np.int64)
        if time == 0:
            yield PositionBlock(start=0, positions=np.concatenate(([0], walked)))
        else:
            yield PositionBlock(start=time + 1, positions=walked)
        time += int(steps.shape[0])
        position = int(walked[-1])


def _check_horizon(traj: Trajectory, n: int) -> None:
    if n < 0 or n > traj.length:
        raise HorizonError(f"Time {n} outside the trajectory horizon [0, {traj.length}]")


def range_size(traj: Trajectory, n: int) -> int:
    """Number of distinct sites visited by time n."""
    _check_horizon(traj, n)
    prefix = traj.prefix(n)
    return int(prefix.max() - prefix.min() + 1)


def local_times(traj: Trajectory, n: int) -> LocalTimeField:
    _check_horizon(traj, n)
    prefix = traj.prefix(n)
    low = int(prefix.min())
    return LocalTimeField.from_dense(low, np.bincount(prefix - low), n=n)


def running_extrema(traj: Trajectory, n: int) -> tuple[int, int]:
    _check_horizon(traj, n)
    prefix = traj.prefix(n)
    return int(prefix.min()), int(prefix.max())


class WalkAccumulator:
    """Running position, extrema and local times over a stream of position blocks."""

    def __init__(self) -> None:
        self._visits = SiteArray()
        self.time = -1
        self.position = 0
        self.min = 0
        self.max = 0

    def update(self, positions: np.ndarray) -> None:
        if positions.size == 0:
            return
        self._visits.add(positions)
        self.min = min(self.min, int(positions.min()))
        self.max = max(self.max, int(positions.max()))
        self.position = int(positions[-1])
        self.time += int(positions.shape[0])

    def consume(self, block: PositionBlock) -> None:
        self.update(block.positions)

    @property
    def range_size(self) -> int:
        return self.max - self.min + 1

    def local_times(self) -> LocalTimeField:
        return self._visits.snapshot(LocalTimeField, n=self.time)

    def summary(self, seed: int) -> TrajectorySummary:
        return TrajectorySummary(
            seed=seed,
            n=self.time,
            final_position=self.position,
            min=self.min,
            max=self.max,
            range=self.range_size,
        )
