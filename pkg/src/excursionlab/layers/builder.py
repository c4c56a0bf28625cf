"""Construction of (k_s, l_s) from a speed function, and the surrogate f-bar."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Callable

from excursionlab.errors import HorizonError, ParameterError, SpeedFunctionError
from excursionlab.layers.speed import GeometricGrid, SpeedFunction, validate_speed
from excursionlab.models import LayerParams
from excursionlab.models.layers import is_infinite

logger = logging.getLogger(__name__)

BRANCH_TOLERANCE = 1e-12
HORIZON_LIMIT = 1e300


def _log_g(f: SpeedFunction, y: int) -> float:
    """log of g(y) = f(y^2) / y."""
    log_y = math.log(y)
    return float(f.log_value(2.0 * log_y)) - log_y


def _at_least(value: float, bound: float) -> bool:
    return value >= bound - BRANCH_TOLERANCE * max(1.0, abs(bound))


def _minimal(predicate: Callable[[int], bool], start: int, cap: int) -> int | None:
    """Smallest integer y >= start satisfying a monotone predicate, or None below ``cap``."""
    if predicate(start):
        return start
    low, high = start, 2 * start
    while not predicate(high):
        if high >= cap:
            return None
        low, high = high, min(2 * high, cap)
    while high - low > 1:
        middle = (low + high) // 2
        if predicate(middle):
            high = middle
        else:
            low = middle
    return high


def build_layers(f: SpeedFunction, m0: float, x_max: float) -> LayerParams:
    """Inductively choose layers until the last bracket covers ``x_max``.

    Each step looks for the minimal y >= m0^2 k_s l_s with
    m0 l_s <= g(y) <= y / (m0 k_s). When the lower constraint binds (ties
    included) l grows by m0, otherwise k does.
    """
    if m0 <= 1:
        raise ParameterError(f"m0 must exceed 1, got {m0}")
    if x_max < 1:
        raise ParameterError(f"x_max must be at least 1, got {x_max}")
    report = validate_speed(f, GeometricGrid(x_max=max(float(x_max), 1.0)))
    if not report.accepted:
        failed = ", ".join(sorted(report.failed_checks()))
        raise SpeedFunctionError(f"{f.name} rejected on [1, {x_max:g}]: {failed}")

    factor = Fraction(m0)
    k: list[int | float] = [1]
    l: list[int | float] = [1]
    tail = None
    while True:
        big_k = math.ceil(factor * k[-1])
        big_l = math.ceil(factor * l[-1])
        start = big_k * big_l
        cap = max(4 * start, math.ceil(x_max))
        log_k, log_l = math.log(big_k), math.log(big_l)

        y_low = _minimal(lambda y: _at_least(_log_g(f, y), log_l), start, cap)
        if y_low is None:
            k.append(math.inf)
            l.append(big_l)
            tail = "diffusive"
            logger.info("%s: g stays below %d up to %d, closing with k = inf", f.name, big_l, cap)
            break
        y_high = _minimal(lambda y: _at_least(math.log(y) - _log_g(f, y), log_k), start, cap)
        if y_high is None:
            k.append(big_k)
            l.append(math.inf)
            tail = "linear"
            logger.info("%s: y/g stays below %d up to %d, closing with l = inf", f.name, big_k, cap)
            break

        if y_low >= y_high:
            k.append(-(-y_low // big_l))
            l.append(big_l)
        else:
            k.append(big_k)
            l.append(-(-y_high // big_k))
        logger.debug("layer %d: k=%d l=%d", len(k) - 1, k[-1], l[-1])
        if (k[-1] * l[-1]) ** 2 > x_max:
            break

    return LayerParams.from_sequences(k, l, m0=m0, source=f.name, tail=tail)


def layers_for_horizon(f: SpeedFunction, m0: float, n_max: int) -> LayerParams:
    """Build enough layers that every critical index below time ``n_max`` has a successor."""
    x_max = max(16, n_max)
    while True:
        layers = build_layers(f, m0, x_max)
        if layers.terminated or layers.k[-1] > n_max + 1:
            return layers
        x_max = x_max * x_max
        if x_max > HORIZON_LIMIT:
            raise HorizonError(f"{f.name}: no layer with k_s > {n_max + 1} below x = 1e300")


def horizon(layers: LayerParams) -> float:
    """Upper end (exclusive) of the range where f-bar is defined."""
    if len(layers) < 2:
        return 1.0
    last = layers.product(layers.last)
    return math.inf if is_infinite(last) else float(last) ** 2


def fbar(layers: LayerParams, x: float) -> float:
    """sqrt(x) l_s + x / k_{s+1} on the bracket (k_s l_s)^2 <= x < (k_{s+1} l_{s+1})^2."""
    if x < 1:
        raise ParameterError(f"f-bar is defined for x >= 1, got {x}")
    if x >= horizon(layers):
        raise HorizonError(f"x = {x} lies beyond the last bracket of the layer sequence")
    s = 0
    while s + 1 < layers.last and layers.product(s + 1) ** 2 <= x:
        s += 1
    k_next = layers.k[s + 1]
    linear = 0.0 if is_infinite(k_next) else x / k_next
    return math.sqrt(x) * layers.l[s] + linear


def approximation_band(
    f: SpeedFunction, layers: LayerParams, *, points: int = 200
) -> tuple[float, float]:
    """min and max of f / f-bar on a geometric grid inside the layer horizon."""
    if len(layers) < 2:
        raise ParameterError("f-bar needs at least two layers")
    top = horizon(layers)
    if math.isinf(top):
        top = float(layers.product(layers.last - 1)) ** 2 * 16
    grid = GeometricGrid(x_max=top * (1 - 1e-9), points=points)
    ratios = [math.exp(float(f.log_value(math.log(x)))) / fbar(layers, x) for x in grid.values()]
    return min(ratios), max(ratios)
