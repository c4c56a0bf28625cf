"""Data structures for simple-random-walk paths and their local times."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from excursionlab.errors import ParameterError


def _frozen(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


@dataclass(slots=True, frozen=True)
class SiteCounts:
    """Nonnegative integer counts indexed by site, stored densely from ``offset``."""

    offset: int
    counts: np.ndarray

    @classmethod
    def empty(cls, **extra) -> SiteCounts:
        return cls(offset=0, counts=_frozen(np.zeros(0, dtype=np.int64)), **extra)

    @classmethod
    def from_dense(cls, offset: int, counts: np.ndarray, **extra) -> SiteCounts:
        """Keep only the span between the first and last nonzero entries."""
        nonzero = np.flatnonzero(counts)
        if nonzero.size == 0:
            return cls.empty(**extra)
        first, last = int(nonzero[0]), int(nonzero[-1])
        span = np.array(counts[first : last + 1], dtype=np.int64)
        return cls(offset=offset + first, counts=_frozen(span), **extra)

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], **extra) -> SiteCounts:
        if not mapping:
            return cls.empty(**extra)
        low = min(mapping)
        counts = np.zeros(max(mapping) - low + 1, dtype=np.int64)
        for site, count in mapping.items():
            if count < 0:
                raise ParameterError(f"Negative count {count} at site {site}")
            counts[site - low] = count
        return cls(offset=low, counts=_frozen(counts), **extra)

    def __getitem__(self, x: int) -> int:
        return self.at(x)

    def at(self, x: int) -> int:
        """Return the count at ``x``; zero outside the stored interval."""
        index = x - self.offset
        if 0 <= index < self.counts.shape[0]:
            return int(self.counts[index])
        return 0

    def gather(self, sites: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`at` over an integer array of sites."""
        index = np.asarray(sites, dtype=np.int64) - self.offset
        inside = (index >= 0) & (index < self.counts.shape[0])
        out = np.zeros(index.shape, dtype=np.int64)
        out[inside] = self.counts[index[inside]]
        return out

    def items(self) -> Iterator[tuple[int, int]]:
        """Yield (site, count) for every nonzero site, in increasing site order."""
        for index in np.flatnonzero(self.counts):
            yield self.offset + int(index), int(self.counts[index])

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def maximum(self) -> int:
        return int(self.counts.max()) if self.counts.size else 0

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.counts))


@dataclass(slots=True, frozen=True)
class LocalTimeField(SiteCounts):
    """Visit counts L(x, n); ``maximum`` is L(n)."""

    n: int = 0


@dataclass(slots=True, frozen=True)
class TrajectorySummary:
    """Serializable summary record of one walk."""

    seed: int
    n: int
    final_position: int
    min: int
    max: int
    range: int

    def to_record(self) -> dict[str, int]:
        return {
            "seed": self.seed,
            "n": self.n,
            "final_position": self.final_position,
            "min": self.min,
            "max": self.max,
            "range": self.range,
        }


@dataclass(slots=True, frozen=True)
class Trajectory:
    """A materialized ±1 path S_0 = 0, S_1, ..., S_n."""

    seed: int
    trial: int
    increments: np.ndarray
    positions: np.ndarray

    @classmethod
    def from_increments(
        cls, increments: np.ndarray | list[int], *, seed: int = 0, trial: int = 0
    ) -> Trajectory:
        steps = np.array(increments, dtype=np.int8)
        if steps.ndim != 1:
            raise ParameterError("increments must be one-dimensional")
        if steps.size and not np.all(np.abs(steps) == 1):
            raise ParameterError("increments must all be +1 or -1")
        positions = np.zeros(steps.size + 1, dtype=np.int64)
        np.cumsum(steps, dtype=np.int64, out=positions[1:])
        return cls(seed=seed, trial=trial, increments=_frozen(steps), positions=_frozen(positions))

    @classmethod
    def from_positions(cls, positions: list[int] | np.ndarray, *, seed: int = 0) -> Trajectory:
        """Build a path from explicit positions; they must start at 0."""
        path = np.asarray(positions, dtype=np.int64)
        if path.size == 0 or path[0] != 0:
            raise ParameterError("positions must start at S_0 = 0")
        return cls.from_increments(np.diff(path), seed=seed)

    @property
    def length(self) -> int:
        return int(self.increments.shape[0])

    @property
    def min_prefix(self) -> np.ndarray:
        """Running minima min_{t' <= t} S_t'."""
        return np.minimum.accumulate(self.positions)

    @property
    def max_prefix(self) -> np.ndarray:
        """Running maxima max_{t' <= t} S_t'."""
        return np.maximum.accumulate(self.positions)

    def prefix(self, n: int) -> np.ndarray:
        """Positions S_0..S_n as a read-only view."""
        return self.positions[: n + 1]

    def serialize(self) -> bytes:
        """Packed increment bits (bit 1 = up step)."""
        return np.packbits(self.increments > 0, bitorder="little").tobytes()

    def summary(self) -> TrajectorySummary:
        low = int(self.positions.min())
        high = int(self.positions.max())
        return TrajectorySummary(
            seed=self.seed,
            n=self.length,
            final_position=int(self.positions[-1]),
            min=low,
            max=high,
            range=high - low + 1,
        )
