"""Domain models for excursionlab."""

from .distance import LAYER_BOUND_COLUMNS, LayerDistanceBounds, TotalDistanceBounds
from .excursion import Completion, ExcursionTally, InducedWalk, SandwichResult
from .layers import CriticalLayers, LayerParams, SpeedReport, Violation
from .records import (
    RECORD_COLUMNS,
    BandSummary,
    FlatnessCheck,
    LilRecord,
    RangeTag,
    RatioBand,
)
from .report import Mode, VerifyReport
from .trajectory import (
    LocalTimeField,
    SiteCounts,
    Trajectory,
    TrajectorySummary,
)

__all__ = [
    "LAYER_BOUND_COLUMNS",
    "RECORD_COLUMNS",
    "BandSummary",
    "Completion",
    "CriticalLayers",
    "ExcursionTally",
    "FlatnessCheck",
    "InducedWalk",
    "LayerDistanceBounds",
    "LayerParams",
    "LilRecord",
    "LocalTimeField",
    "Mode",
    "RangeTag",
    "RatioBand",
    "SandwichResult",
    "SiteCounts",
    "SpeedReport",
    "TotalDistanceBounds",
    "Trajectory",
    "TrajectorySummary",
    "VerifyReport",
    "Violation",
]
