"""Subcommand bodies: each turns a resolved config document into artifacts and a manifest."""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from excursionlab.config import (
    ConfigDocument,
    ExperimentConfig,
    LayerBuildSpec,
    SimulateSpec,
    VerifySpec,
    to_dict,
)
from excursionlab.excursions import ExcursionTracker, aggregate_record, merge_tallies
from excursionlab.layers import approximation_band, build_layers, parse_speed_spec
from excursionlab.lil import (
    LilHarness,
    band_summary,
    write_json,
    write_layer_bounds,
    write_records,
)
from excursionlab.manifest import RunManifest
from excursionlab.models import Completion, ExcursionTally, TrajectorySummary
from excursionlab.verify import run_suite, suite_document
from excursionlab.walk import WalkAccumulator, derive_seed, stream_walk

logger = logging.getLogger(__name__)

WALK_COLUMNS = ("trial", "seed", "n", "final_position", "min", "max", "range")
TALLY_COLUMNS = ("k", "n", "x", "count")


@dataclass(slots=True, frozen=True)
class Outcome:
    manifest: RunManifest
    passed: bool = True


def _manifest(command: str, document: ConfigDocument) -> RunManifest:
    return RunManifest(
        command=command, config=to_dict(document), master_seed=getattr(document, "seed", 0)
    )


def _simulate_trial(
    spec: SimulateSpec, trial: int
) -> tuple[TrajectorySummary, list[ExcursionTally]]:
    seed = derive_seed(spec.seed, "simulate", trial)
    walker = WalkAccumulator()
    trackers = [ExcursionTracker(k, completion=Completion(spec.completion)) for k in spec.depths]
    for block in stream_walk(seed, spec.n, trial=trial):
        walker.consume(block)
        for tracker in trackers:
            tracker.update(block.positions)
    return walker.summary(seed), [tracker.tally() for tracker in trackers]


def simulate(spec: SimulateSpec, out_dir: Path, threads: int | None) -> Outcome:
    manifest = _manifest("simulate", spec)
    manifest.task_seeds["simulate"] = [
        derive_seed(spec.seed, "simulate", trial) for trial in range(spec.trials)
    ]
    with ThreadPoolExecutor(max_workers=threads or spec.threads) as pool:
        results = list(pool.map(lambda trial: _simulate_trial(spec, trial), range(spec.trials)))

    walks = out_dir / spec.walks
    with walks.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(WALK_COLUMNS)
        for trial, (summary, _) in enumerate(results):
            record = summary.to_record()
            writer.writerow([trial, *(record[column] for column in WALK_COLUMNS[1:])])
    manifest.record_output(walks)

    if spec.depths:
        per_trial = [tallies for _, tallies in results]
        totals = list(per_trial[0])
        for tallies in per_trial[1:]:
            totals = [merge_tallies(first, second) for first, second in zip(totals, tallies)]
        tallies_path = out_dir / spec.tallies
        with tallies_path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(TALLY_COLUMNS)
            for tally in totals:
                writer.writerows(tally.to_rows())
        manifest.record_output(tallies_path)

        aggregates = [
            {"trial": trial, **aggregate_record(tally)}
            for trial, tallies in enumerate(per_trial)
            for tally in tallies
        ]
        payload = {"completion": spec.completion, "records": aggregates}
        manifest.record_output(write_json(out_dir / spec.aggregates, payload))
    return Outcome(manifest)


def build(spec: LayerBuildSpec, out_dir: Path, threads: int | None) -> Outcome:
    manifest = _manifest("build-layers", spec)
    f = parse_speed_spec(spec.f, epsilon=spec.epsilon)
    layers = build_layers(f, spec.m0, spec.xmax)
    low, high = approximation_band(f, layers)
    logger.info("f / fbar stays within [%.4g, %.4g] up to the horizon", low, high)
    manifest.record_output(write_json(out_dir / spec.out, layers.to_dict()))
    return Outcome(manifest)


def lil(config: ExperimentConfig, out_dir: Path, threads: int | None) -> Outcome:
    manifest = _manifest("lil", config)
    harness = LilHarness(config)
    manifest.task_seeds["lil"] = [harness.trial_seed(trial) for trial in range(config.trials)]
    records = harness.run(threads)
    summary = band_summary(
        records,
        config.m_burnin,
        drift_slack=config.drift_slack,
        band_limit=config.band_limit,
    )
    manifest.record_output(write_records(out_dir / config.records, records))
    manifest.record_output(write_layer_bounds(out_dir / config.bounds, harness.layer_bounds))
    payload = summary.to_dict()
    payload["shape_constants"] = harness.shape_constants
    payload["layers"] = harness.layers.to_dict()
    manifest.record_output(write_json(out_dir / config.summary, payload))
    return Outcome(manifest, summary.passed)


def verify(spec: VerifySpec, out_dir: Path, threads: int | None) -> Outcome:
    manifest = _manifest("verify", spec)
    reports = run_suite(spec, threads=threads)
    document = suite_document(spec, reports)
    manifest.record_output(write_json(out_dir / spec.out, document))
    return Outcome(manifest, document["passed"])


RUNNERS: dict[str, Callable[..., Outcome]] = {
    "simulate": simulate,
    "build-layers": build,
    "lil": lil,
    "verify": verify,
}


def run_command(
    command: str, document: ConfigDocument, out_dir: Path, threads: int | None = None
) -> Outcome:
    out_dir.mkdir(parents=True, exist_ok=True)
    outcome = RUNNERS[command](document, out_dir, threads)
    outcome.manifest.finish()
    return outcome
