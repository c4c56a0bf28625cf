"""Per-trial walk statistics gathered in a single streaming pass."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from excursionlab.excursions import ExcursionTracker, InducedCounter, truncated_sum, weighted_total
from excursionlab.walk import WalkAccumulator, derive_seed, stream_walk

logger = logging.getLogger(__name__)


@dataclass(slots=True, frozen=True)
class TrialSample:
    range: int
    max_local: int
    max_position: int
    steps: tuple[int, ...]
    totals: tuple[int, ...]
    maxima: tuple[int, ...]
    sums: tuple[int, ...]
    truncated: tuple[int, ...]


@dataclass(slots=True, frozen=True)
class WalkSamples:
    """Statistics of ``trials`` independent walks of length ``n``; depth columns follow ``depths``.

    Trial i always uses the same walk, so a smaller trial count is a prefix of a larger one.
    """

    seed: int
    n: int
    depths: tuple[int, ...]
    cap: float
    ranges: np.ndarray
    max_local: np.ndarray
    max_position: np.ndarray
    steps: np.ndarray
    totals: np.ndarray
    maxima: np.ndarray
    sums: np.ndarray
    truncated: np.ndarray

    @property
    def trials(self) -> int:
        return int(self.ranges.shape[0])

    @property
    def task(self) -> str:
        return f"mc/n={self.n}"

    def column(self, k: int) -> int:
        return self.depths.index(k)

    def head(self, trials: int) -> WalkSamples:
        """The first ``trials`` trials."""
        return WalkSamples(
            seed=self.seed,
            n=self.n,
            depths=self.depths,
            cap=self.cap,
            **{
                name: getattr(self, name)[:trials]
                for name in (
                    "ranges",
                    "max_local",
                    "max_position",
                    "steps",
                    "totals",
                    "maxima",
                    "sums",
                    "truncated",
                )
            },
        )


def sample_trial(
    seed: int, n: int, trial: int, depths: tuple[int, ...], cap: float
) -> TrialSample:
    walker = WalkAccumulator()
    trackers = [ExcursionTracker(k) for k in depths]
    counters = [InducedCounter(k) for k in depths]
    task_seed = derive_seed(seed, f"mc/n={n}", trial)
    for block in stream_walk(task_seed, n, trial=trial):
        walker.consume(block)
        for tracker, counter in zip(trackers, counters):
            tracker.update(block.positions)
            counter.update(block.positions)
    tallies = [tracker.tally() for tracker in trackers]
    return TrialSample(
        range=walker.range_size,
        max_local=walker.local_times().maximum,
        max_position=walker.max,
        steps=tuple(counter.steps for counter in counters),
        totals=tuple(weighted_total(tally) for tally in tallies),
        maxima=tuple(tally.maximum for tally in tallies),
        sums=tuple(tally.total for tally in tallies),
        truncated=tuple(truncated_sum(tally, cap) for tally in tallies),
    )


def sample_walks(
    seed: int,
    n: int,
    trials: int,
    depths: tuple[int, ...] = (),
    *,
    cap: float = math.inf,
    threads: int | None = None,
) -> WalkSamples:
    """Run ``trials`` walks on a thread pool; results do not depend on ``threads``."""
    depths = tuple(depths)
    logger.info("sampling %d walks of %d steps at depths %s", trials, n, depths)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(
            pool.map(lambda trial: sample_trial(seed, n, trial, depths, cap), range(trials))
        )

    def stack(name: str) -> np.ndarray:
        rows = [getattr(result, name) for result in results]
        return np.array(rows, dtype=np.int64).reshape(trials, len(depths))

    return WalkSamples(
        seed=seed,
        n=n,
        depths=depths,
        cap=cap,
        ranges=np.array([result.range for result in results], dtype=np.int64),
        max_local=np.array([result.max_local for result in results], dtype=np.int64),
        max_position=np.array([result.max_position for result in results], dtype=np.int64),
        steps=stack("steps"),
        totals=stack("totals"),
        maxima=stack("maxima"),
        sums=stack("sums"),
        truncated=stack("truncated"),
    )
