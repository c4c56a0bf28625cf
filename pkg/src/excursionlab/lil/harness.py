"""Multi-trial LIL experiments over an exponential checkpoint grid."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from excursionlab.config import ExperimentConfig
from excursionlab.distance import DistanceModel, SnapshotSource
from excursionlab.errors import HorizonError, ParameterError
from excursionlab.excursions import ExcursionTracker
from excursionlab.layers import (
    SpeedFunction,
    fbar,
    horizon,
    layers_for_horizon,
    loglog,
    parse_speed_spec,
    scaling_from_f,
    scaling_g,
    scaling_h,
)
from excursionlab.models import LayerDistanceBounds, LayerParams, LilRecord, RangeTag
from excursionlab.walk import PositionBlock, WalkAccumulator, derive_seed, stream_walk

logger = logging.getLogger(__name__)

TASK = "lil"


@dataclass(slots=True, frozen=True)
class Checkpoint:
    m: int
    n: int


@dataclass(slots=True, frozen=True)
class TrialRun:
    records: list[LilRecord]
    constants: dict[str, float]
    bounds: list[LayerDistanceBounds]


@dataclass(slots=True, frozen=True)
class SurrogateSpeed:
    """f-bar of explicit layers, used when no speed function was configured."""

    layers: LayerParams
    epsilon: float = 0.0

    @property
    def name(self) -> str:
        return "fbar"

    def log_value(self, log_x):
        return math.log(fbar(self.layers, math.exp(log_x)))


def checkpoint_grid(n_max: int, base: float = 2.0) -> list[Checkpoint]:
    """Times t_m = floor(base^m) with 16 <= t_m <= n_max, deduplicated."""
    if base <= 1:
        raise ParameterError(f"checkpoint base must exceed 1, got {base}")
    grid: list[Checkpoint] = []
    m = 0
    while (t := math.floor(base**m)) <= n_max:
        if t >= 16 and (not grid or t > grid[-1].n):
            grid.append(Checkpoint(m=m, n=t))
        m += 1
    return grid


def classify_range(range_size: int, n: int) -> RangeTag:
    """range-low takes precedence over range-high where the two regions overlap."""
    ll = loglog(n)
    if range_size <= 2 * math.sqrt(n) / math.sqrt(ll):
        return RangeTag.LOW
    if range_size >= 0.25 * math.sqrt(n * ll):
        return RangeTag.HIGH
    return RangeTag.NEUTRAL


def extremal_time_marks(records: list[LilRecord]) -> dict[RangeTag, list[LilRecord]]:
    marks: dict[RangeTag, list[LilRecord]] = {tag: [] for tag in RangeTag}
    for record in records:
        marks[classify_range(record.range, record.n)].append(record)
    return marks


def resolve_layers(config: ExperimentConfig) -> tuple[LayerParams, SpeedFunction]:
    """Layers and speed function for ``config``; raises before any simulation if too short."""
    if config.f is not None:
        f = parse_speed_spec(config.f, epsilon=config.epsilon)
        return layers_for_horizon(f, config.m0, config.n_max), f

    layers = LayerParams.from_dict(config.layers or {})
    if not layers.terminated and layers.k[-1] <= config.n_max + 1:
        raise HorizonError(
            f"Layers end at k = {layers.k[-1]}, which does not cover n_max = {config.n_max}"
        )
    needed = config.n_max * loglog(config.n_max)
    if horizon(layers) <= needed:
        raise HorizonError(f"f-bar of the given layers is undefined at x = {needed:.6g}")
    return layers, SurrogateSpeed(layers)


class LilHarness:
    """Runs the trials of one experiment and evaluates every checkpoint."""

    def __init__(
        self,
        config: ExperimentConfig,
        *,
        stream: Callable[..., Iterator[PositionBlock]] = stream_walk,
    ) -> None:
        self.config = config
        self.layers, self.speed = resolve_layers(config)
        self.model = DistanceModel(
            self.layers, r=config.r, sigma=config.sigma, c0=config.c0, d2=config.d2
        )
        self.grid = checkpoint_grid(config.n_max, config.checkpoint_base)
        self.lower_top = self.model.lower_top(config.n_max)
        self.depths = self.model.depths(config.n_max, full_through=self.lower_top)
        self.shape_constants: dict[str, float] = {}
        self.layer_bounds: list[tuple[int, LayerDistanceBounds]] = []
        self._stream = stream

    def trial_seed(self, trial: int) -> int:
        return derive_seed(self.config.seed, TASK, trial)

    def run(self, threads: int | None = None) -> list[LilRecord]:
        workers = threads or self.config.threads
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(self.run_trial, range(self.config.trials)))
        self.shape_constants = {}
        for result in per_trial:
            for name, value in result.constants.items():
                self.shape_constants[name] = max(self.shape_constants.get(name, 0.0), value)
        self.layer_bounds = [
            (trial, bounds) for trial, result in enumerate(per_trial) for bounds in result.bounds
        ]
        return [record for result in per_trial for record in result.records]

    def run_trial(self, trial: int) -> TrialRun:
        """One pass over the walk, cutting blocks at checkpoint times."""
        walker = WalkAccumulator()
        trackers = [ExcursionTracker(k) for k in self.depths]
        records: list[LilRecord] = []
        constants: dict[str, float] = {}
        bounds: list[LayerDistanceBounds] = []

        def feed(positions: np.ndarray) -> None:
            walker.update(positions)
            for tracker in trackers:
                tracker.update(positions)

        index = 0
        seed = self.trial_seed(trial)
        for block in self._stream(seed, self.config.n_max, trial=trial):
            positions, start = block.positions, block.start
            while index < len(self.grid) and self.grid[index].n <= block.stop:
                checkpoint = self.grid[index]
                cut = checkpoint.n - start + 1
                feed(positions[:cut])
                positions, start = positions[cut:], checkpoint.n + 1
                source = SnapshotSource(
                    checkpoint.n,
                    walker.range_size,
                    {tracker.k: tracker.tally() for tracker in trackers},
                )
                records.append(self.evaluate(trial, checkpoint, source))
                bounds.extend(
                    self.model.rows(source, through=self.model.lower_top(checkpoint.n))
                )
                if checkpoint.m >= self.config.m_burnin:
                    for name, value in self.model.shape_constants(source).items():
                        constants[name] = max(constants.get(name, 0.0), value)
                index += 1
            feed(positions)
        logger.info("trial %d finished with %d checkpoints", trial, len(records))
        return TrialRun(records, constants, bounds)

    def evaluate(self, trial: int, checkpoint: Checkpoint, source: SnapshotSource) -> LilRecord:
        n, r = checkpoint.n, self.config.r
        critical = self.model.critical(source)
        return LilRecord(
            trial=trial,
            m=checkpoint.m,
            n=n,
            range=source.range_size,
            s0=critical.s0,
            s0p=critical.s0_prime,
            s1=critical.s1,
            s2=critical.s2,
            s3=critical.s3,
            s3t=critical.s3_tilde,
            D_up=self.model.total_upper(source),
            D_lo=self.model.lower_for_h(source, critical),
            g=scaling_g(self.layers, n, r),
            h=scaling_h(self.layers, n, r),
            fs_limsup=scaling_from_f(self.speed, n, "limsup"),
            fs_liminf=scaling_from_f(self.speed, n, "liminf"),
            tag=classify_range(source.range_size, n),
        )


def run_experiment(config: ExperimentConfig, *, threads: int | None = None) -> list[LilRecord]:
    """All records of ``config``, ordered by (trial, m)."""
    return LilHarness(config).run(threads)
