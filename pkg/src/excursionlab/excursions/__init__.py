"""Excursion statistics and induced walks."""

from .induced import InducedCounter, induce_walk
from .sandwich import half_depth, sandwich_check, sandwich_field
from .stats import (
    aggregate_record,
    count_excursions,
    excursion_field,
    max_excursions,
    merge_tallies,
    total_excursions,
    truncated_sum,
    weighted_total,
)
from .tracker import ExcursionTracker

__all__ = [
    "ExcursionTracker",
    "InducedCounter",
    "aggregate_record",
    "count_excursions",
    "excursion_field",
    "half_depth",
    "induce_walk",
    "max_excursions",
    "merge_tallies",
    "sandwich_check",
    "sandwich_field",
    "total_excursions",
    "truncated_sum",
    "weighted_total",
]
