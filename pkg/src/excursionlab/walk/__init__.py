"""Walk generation for excursionlab."""

from .engine import (
    MATERIALIZE_LIMIT,
    IncrementSource,
    PositionBlock,
    WalkAccumulator,
    generate_walk,
    local_times,
    range_size,
    running_extrema,
    stream_walk,
)
from .rng import BLOCK_STEPS, PhiloxIncrements, derive_seed, splitmix64

__all__ = [
    "BLOCK_STEPS",
    "MATERIALIZE_LIMIT",
    "IncrementSource",
    "PhiloxIncrements",
    "PositionBlock",
    "WalkAccumulator",
    "derive_seed",
    "generate_walk",
    "local_times",
    "range_size",
    "running_extrema",
    "splitmix64",
    "stream_walk",
]
