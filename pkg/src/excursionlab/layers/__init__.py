"""Layer sequences, speed functions and critical indices."""

from .builder import approximation_band, build_layers, fbar, horizon, layers_for_horizon
from .critical import (
    critical_layers,
    last_index,
    s0_index,
    s1_index,
    scaling_g,
    scaling_g_with_slack,
    scaling_h,
    speed_estimate,
)
from .speed import (
    GeometricGrid,
    LogLogTable,
    PowerLaw,
    SpeedFunction,
    loglog,
    parse_speed_spec,
    scaling_from_f,
    validate_speed,
)

__all__ = [
    "GeometricGrid",
    "LogLogTable",
    "PowerLaw",
    "SpeedFunction",
    "approximation_band",
    "build_layers",
    "critical_layers",
    "fbar",
    "horizon",
    "last_index",
    "layers_for_horizon",
    "loglog",
    "parse_speed_spec",
    "s0_index",
    "s1_index",
    "scaling_from_f",
    "scaling_g",
    "scaling_g_with_slack",
    "scaling_h",
    "speed_estimate",
    "validate_speed",
]
