"""Distance-bound values produced for one trajectory prefix."""

from __future__ import annotations

from dataclasses import dataclass

from excursionlab.models.layers import Depth, is_infinite

LAYER_BOUND_COLUMNS = ("n", "s", "k_s", "l_s", "upper", "lower_proxy", "valid_flag")


@dataclass(slots=True, frozen=True)
class LayerDistanceBounds:
    """Upper bound and lower proxy for the distance in layer s at time n."""

    s: int
    n: int
    k_s: Depth
    l_s: Depth
    upper: float
    lower_proxy: float
    valid: bool
    sigma: float = 1.0
    c0: float = 1.0

    def to_row(self) -> tuple[int, int, int | str, int | str, float, float, int]:
        """CSV row ``(n, s, k_s, l_s, upper, lower_proxy, valid_flag)``."""
        return (
            self.n,
            self.s,
            "inf" if is_infinite(self.k_s) else int(self.k_s),
            "inf" if is_infinite(self.l_s) else int(self.l_s),
            self.upper,
            self.lower_proxy,
            int(self.valid),
        )


@dataclass(slots=True, frozen=True)
class TotalDistanceBounds:
    n: int
    upper: float
    lower: float
    layers_evaluated: tuple[int, ...]
    critical_pair: float | None = None
