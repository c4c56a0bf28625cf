"""LIL experiments over exponential checkpoint grids."""

from .harness import (
    Checkpoint,
    LilHarness,
    TrialRun,
    checkpoint_grid,
    classify_range,
    extremal_time_marks,
    resolve_layers,
    run_experiment,
)
from .io import read_records, write_json, write_layer_bounds, write_records
from .summary import band_summary, ratio_band

__all__ = [
    "Checkpoint",
    "LilHarness",
    "TrialRun",
    "band_summary",
    "checkpoint_grid",
    "classify_range",
    "extremal_time_marks",
    "ratio_band",
    "read_records",
    "resolve_layers",
    "run_experiment",
    "write_json",
    "write_layer_bounds",
    "write_records",
]
