"""Critical layer indices and the scaling functions built from them."""

from __future__ import annotations

import math
from typing import Callable

from excursionlab.errors import HorizonError, ParameterError
from excursionlab.layers.speed import loglog
from excursionlab.models import CriticalLayers, LayerParams
from excursionlab.models.layers import Depth, is_infinite


def last_index(layers: LayerParams, predicate: Callable[[int], bool]) -> int:
    """Largest s with predicate(s); layer 0 when even the base layer fails."""
    s = 0
    while s + 1 < len(layers) and predicate(s + 1):
        s += 1
    return s


def s0_index(layers: LayerParams, range_size: int) -> int:
    """max{s : k_s <= |range(S_n)|}."""
    return last_index(layers, lambda s: layers.k[s] <= range_size)


def s1_index(layers: LayerParams, n: int) -> int:
    """max{s : k_s l_s <= sqrt(n)}."""
    root = math.sqrt(n)
    return last_index(layers, lambda s: layers.product(s) <= root)


def critical_layers(
    layers: LayerParams, n: int, r: float, *, range_size: int | None = None
) -> CriticalLayers:
    if n < 16:
        raise ParameterError(f"Critical layers need n >= 16, got {n}")
    if not 0 < r <= 1:
        raise ParameterError(f"Band constant r must lie in (0, 1], got {r}")
    ll = loglog(n)
    root = math.sqrt(n)
    narrow = r * root / math.sqrt(ll)
    wide = math.sqrt(n * ll)
    s0_prime = last_index(layers, lambda s: layers.k[s] <= narrow)
    s3 = last_index(layers, lambda s: layers.product(s) <= wide)
    return CriticalLayers(
        n=n,
        r=r,
        s0=None if range_size is None else s0_index(layers, range_size),
        s0_prime=s0_prime,
        s1=s1_index(layers, n),
        s2=last_index(layers, lambda s: layers.product(s) <= narrow),
        s3=s3,
        s3_tilde=min(s0_prime, s3),
    )


def _successor(layers: LayerParams, s: int) -> Depth:
    if s + 1 >= len(layers):
        raise HorizonError(f"Layer {s + 1} is needed but the sequence ends at {layers.last}")
    return layers.k[s + 1]


def _over(n: float, k: Depth) -> float:
    return 0.0 if is_infinite(k) else n / k


def scaling_g(layers: LayerParams, n: int, r: float) -> float:
    """n / k_{s2+1} + sqrt(n log log n) l_{s2}."""
    s2 = critical_layers(layers, n, r).s2
    return _over(n, _successor(layers, s2)) + math.sqrt(n * loglog(n)) * layers.l[s2]


def scaling_h(layers: LayerParams, n: int, r: float) -> float:
    """The liminf scale, split on whether s3 < s0'."""
    critical = critical_layers(layers, n, r)
    narrow = math.sqrt(n) / math.sqrt(loglog(n))
    if critical.s3 < critical.s0_prime:
        s3 = critical.s3
        return _over(n, _successor(layers, s3)) + narrow * layers.l[s3]
    return narrow * layers.l[critical.s0_prime]


def scaling_g_with_slack(layers: LayerParams, n: int, r: float) -> float:
    """g(n) plus the sqrt(n log log n) log log log n contribution of layers beyond s0'."""
    ll = loglog(n)
    return scaling_g(layers, n, r) + math.sqrt(n * ll) * math.log(ll)


def speed_estimate(layers: LayerParams, n: int) -> float:
    """sqrt(n) l_{s1} + n / k_{s1+1}, the order of the expected distance at time n."""
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    s1 = s1_index(layers, n)
    return math.sqrt(n) * layers.l[s1] + _over(n, _successor(layers, s1))
