"""Distance bounds on the diagonal product."""

from .bounds import (
    DistanceModel,
    layer_lower_proxy,
    layer_upper,
    total_lower,
    total_upper,
)
from .sources import ExcursionSource, SnapshotSource, TrajectorySource

__all__ = [
    "DistanceModel",
    "ExcursionSource",
    "SnapshotSource",
    "TrajectorySource",
    "layer_lower_proxy",
    "layer_upper",
    "total_lower",
    "total_upper",
]
