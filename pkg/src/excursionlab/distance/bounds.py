"""Per-layer and total distance bounds evaluated from excursion tallies."""

from __future__ import annotations

import math
from dataclasses import dataclass

from excursionlab.distance.sources import ExcursionSource, TrajectorySource
from excursionlab.errors import HorizonError, ParameterError
from excursionlab.excursions import half_depth, truncated_sum, weighted_total
from excursionlab.layers import critical_layers, last_index, loglog, s0_index
from excursionlab.models import (
    CriticalLayers,
    LayerDistanceBounds,
    LayerParams,
    TotalDistanceBounds,
    Trajectory,
)
from excursionlab.models.layers import is_infinite

LAYER_FACTOR = 11
TOTAL_FACTOR = 500


@dataclass(slots=True, frozen=True)
class DistanceModel:
    """Evaluates distance bounds of a walk prefix against fixed layers and constants."""

    layers: LayerParams
    r: float = 0.125
    sigma: float = 1.0
    c0: float = 1.0
    d2: float = 0.25

    def __post_init__(self) -> None:
        for name in ("sigma", "c0"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ParameterError(f"{name} must lie in (0, 1], got {value}")
        if self.d2 <= 0:
            raise ParameterError(f"d2 must be positive, got {self.d2}")

    def depths(self, n_max: int, *, full_through: int | None = None) -> list[int]:
        """Every depth whose tally some bound may request up to time ``n_max``.

        Upper bounds read half depths of every layer the range can reach; lower
        proxies read k_s itself, which is only tracked for s <= ``full_through``.
        """
        needed: set[int] = set()
        for s, k_s in enumerate(self.layers.k):
            if is_infinite(k_s) or k_s > n_max + 1:
                continue
            needed.add(half_depth(int(k_s)))
            if full_through is None or s <= full_through:
                needed.add(int(k_s))
        return sorted(needed)

    def lower_top(self, n: int) -> int:
        """Last layer whose lower proxy can enter a total or be valid at time n.

        Covers s0'(n) and every valid layer; nondecreasing in n.
        """
        if n < 16:
            raise ParameterError(f"Lower proxies are only evaluated for n >= 16, got {n}")
        threshold = max(self.r, self.d2) * math.sqrt(n) / math.sqrt(loglog(n))
        return last_index(self.layers, lambda s: self.layers.k[s] <= threshold)

    def layer_upper(self, source: ExcursionSource, s: int) -> float:
        """11 min{k_s sum_j T(h, jh, n) + range, range l_s} with h the half depth of k_s."""
        k_s, l_s = self.layers.k[s], self.layers.l[s]
        if is_infinite(k_s):
            return 0.0
        h = half_depth(k_s)
        lattice_sum = weighted_total(source.tally(h)) // h
        first = k_s * lattice_sum + source.range_size
        second = math.inf if is_infinite(l_s) else source.range_size * l_s
        return float(LAYER_FACTOR * min(first, second))

    def layer_lower(self, source: ExcursionSource, s: int) -> float:
        """(sigma c0 / 16) sum_x min{T(k_s, x, n), ceil(c0 l_s)}."""
        k_s, l_s = self.layers.k[s], self.layers.l[s]
        if is_infinite(k_s):
            return 0.0
        cap = math.inf if is_infinite(l_s) else math.ceil(self.c0 * l_s)
        return self.sigma * self.c0 / 16 * truncated_sum(source.tally(k_s), cap)

    def valid(self, s: int, n: int) -> bool:
        """Whether k_s is small enough for the lower proxy to be meaningful at time n."""
        k_s = self.layers.k[s]
        if n < 16 or is_infinite(k_s):
            return False
        return k_s <= self.d2 * math.sqrt(n) / math.sqrt(loglog(n))

    def layer_bounds(self, source: ExcursionSource, s: int) -> LayerDistanceBounds:
        return LayerDistanceBounds(
            s=s,
            n=source.n,
            k_s=self.layers.k[s],
            l_s=self.layers.l[s],
            upper=self.layer_upper(source, s),
            lower_proxy=self.layer_lower(source, s),
            valid=self.valid(s, source.n),
            sigma=self.sigma,
            c0=self.c0,
        )

    def s0(self, source: ExcursionSource) -> int:
        return s0_index(self.layers, source.range_size)

    def critical(self, source: ExcursionSource) -> CriticalLayers:
        return critical_layers(self.layers, source.n, self.r, range_size=source.range_size)

    def total_upper(self, source: ExcursionSource) -> float:
        """500 times the sum of layer upper bounds over s <= s0(n)."""
        return TOTAL_FACTOR * sum(self.layer_upper(source, s) for s in range(self.s0(source) + 1))

    def lower_layers(self, source: ExcursionSource) -> list[int]:
        """Layers s <= s0'(n), or s <= s0(n) while s0' is undefined (n < 16)."""
        if source.n >= 16:
            top = self.critical(source).s0_prime
        else:
            top = self.s0(source)
        return [s for s in range(top + 1) if not is_infinite(self.layers.k[s])]

    def total_lower(self, source: ExcursionSource) -> float:
        return max((self.layer_lower(source, s) for s in self.lower_layers(source)), default=0.0)

    def critical_pair(self, source: ExcursionSource, s: int) -> float:
        """Average of the lower proxies of layers s and s + 1."""
        if s + 1 >= len(self.layers):
            raise HorizonError(
                f"Layer {s + 1} is needed but the sequence ends at {self.layers.last}"
            )
        return 0.5 * (self.layer_lower(source, s) + self.layer_lower(source, s + 1))

    def lower_for_g(self, source: ExcursionSource, critical: CriticalLayers) -> float:
        return self.critical_pair(source, critical.s2)

    def lower_for_h(self, source: ExcursionSource, critical: CriticalLayers) -> float:
        """Pair at s3 when s3 < s0', otherwise the single layer s0'."""
        if critical.s3 < critical.s0_prime:
            return self.critical_pair(source, critical.s3)
        return self.layer_lower(source, critical.s0_prime)

    def totals(self, source: ExcursionSource) -> TotalDistanceBounds:
        layers_evaluated = tuple(range(self.s0(source) + 1))
        pair = None
        if source.n >= 16:
            critical = self.critical(source)
            if critical.s2 + 1 < len(self.layers):
                pair = self.lower_for_g(source, critical)
        return TotalDistanceBounds(
            n=source.n,
            upper=self.total_upper(source),
            lower=self.total_lower(source),
            layers_evaluated=layers_evaluated,
            critical_pair=pair,
        )

    def rows(
        self, source: ExcursionSource, *, through: int | None = None
    ) -> list[LayerDistanceBounds]:
        """Per-layer bounds for every layer that enters either total, cut at ``through``."""
        top = self.s0(source)
        if source.n >= 16:
            top = max(top, self.critical(source).s0_prime)
        if through is not None:
            top = min(top, through)
        return [self.layer_bounds(source, s) for s in range(min(top, self.layers.last) + 1)]

    def shape_constants(self, source: ExcursionSource) -> dict[str, float]:
        """Largest ratio of layer upper bound to its regime scale, per regime.

        limsup regimes split at s2 and s0'; liminf regimes split at s3-tilde.
        """
        n = source.n
        critical = self.critical(source)
        ll = loglog(n)
        wide = math.sqrt(n * ll)
        narrow = math.sqrt(n / ll)
        constants = dict.fromkeys(
            ("limsup_low", "limsup_mid", "limsup_high", "liminf_low", "liminf_high"), 0.0
        )
        for s in range(self.s0(source) + 1):
            k_s, l_s = self.layers.k[s], self.layers.l[s]
            if is_infinite(k_s):
                continue
            upper = self.layer_upper(source, s)
            if s <= critical.s2:
                regime, scale = "limsup_low", wide * l_s
            elif s <= critical.s0_prime:
                regime, scale = "limsup_mid", n / k_s
            else:
                regime, scale = "limsup_high", wide
            constants[regime] = max(constants[regime], upper / scale)
            if s <= critical.s3_tilde:
                regime, scale = "liminf_low", narrow * l_s
            else:
                regime, scale = "liminf_high", n / k_s
            constants[regime] = max(constants[regime], upper / scale)
        return constants


def layer_upper(traj: Trajectory, layers: LayerParams, s: int, n: int) -> float:
    return DistanceModel(layers).layer_upper(TrajectorySource(traj, n), s)


def layer_lower_proxy(
    traj: Trajectory,
    layers: LayerParams,
    s: int,
    n: int,
    sigma: float = 1.0,
    c0: float = 1.0,
) -> float:
    return DistanceModel(layers, sigma=sigma, c0=c0).layer_lower(TrajectorySource(traj, n), s)


def total_upper(traj: Trajectory, layers: LayerParams, n: int) -> float:
    return DistanceModel(layers).total_upper(TrajectorySource(traj, n))


def total_lower(
    traj: Trajectory,
    layers: LayerParams,
    n: int,
    sigma: float = 1.0,
    c0: float = 1.0,
    *,
    r: float = 0.125,
) -> TotalDistanceBounds:
    """Max lower proxy over s <= s0'(n), plus the critical-pair value at s2(n)."""
    return DistanceModel(layers, r=r, sigma=sigma, c0=c0).totals(TrajectorySource(traj, n))
