"""Monte Carlo checks of tail and concentration laws.

Universal constants are never asserted; each check fits them from the sample
and reports them in ``constants``. Pass criteria are explicit and named.
"""

from __future__ import annotations

import functools
import logging
import math
from typing import Iterable

import numpy as np
from scipy.stats import binom

from excursionlab.errors import ParameterError
from excursionlab.layers import loglog
from excursionlab.lil.harness import classify_range
from excursionlab.models import Mode, RangeTag, VerifyReport
from excursionlab.verify.samples import WalkSamples, sample_walks
from excursionlab.verify.stats import bootstrap_interval, central_band, standard_error

logger = logging.getLogger(__name__)

CONCENTRATION_LIMITS = (0.3, 3.0)
CONCENTRATION_TAIL = 0.01
LOCAL_TIME_LEVELS = (1, 2, 3, 4, 5)
LOCAL_TIME_P99 = 6.0
SPLIT_TAIL = 0.005
QUADRATIC_FROM = 2
QUADRATIC_SLACK = 0.25
SMALL_BALL_LEVEL = 0.9999
TREND_Z = 3.0


def _samples(
    samples: WalkSamples | None,
    *,
    seed: int,
    n: int,
    trials: int,
    depths: tuple[int, ...] = (),
    cap: float | None = None,
    threads: int | None = None,
) -> WalkSamples:
    if samples is None:
        cap = math.inf if cap is None else cap
        return sample_walks(seed, n, trials, depths, cap=cap, threads=threads)
    if samples.n != n or not set(depths) <= set(samples.depths) or samples.trials < trials:
        raise ParameterError("Shared samples do not cover the requested n, depths or trials")
    if cap is not None and samples.cap != cap:
        raise ParameterError(f"Shared samples were truncated at {samples.cap}, not {cap}")
    return samples.head(trials)


def nk_concentration(
    k: int,
    n: int,
    trials: int,
    *,
    seed: int = 0,
    bootstrap: int = 1000,
    threads: int | None = None,
    samples: WalkSamples | None = None,
) -> VerifyReport:
    """N_k(n) k^2 / n: mean against 1 and mass outside the fixed limits."""
    if k * k > n:
        raise ParameterError(f"Need k^2 <= n, got k={k}, n={n}")
    data = _samples(samples, seed=seed, n=n, trials=trials, depths=(k,), threads=threads)
    ratio = data.steps[:, data.column(k)] * (k * k / n)
    mean = float(ratio.mean())
    error = standard_error(ratio)
    low, high = CONCENTRATION_LIMITS
    outside = float(np.mean((ratio < low) | (ratio > high)))
    c_hat, big_c_hat = central_band(ratio)
    name = f"nk_concentration[k={k},n={n}]"
    return VerifyReport(
        name=name,
        mode=Mode.MONTE_CARLO,
        instances=trials,
        constants={"mean": mean, "stderr": error, "c": c_hat, "C": big_c_hat, "outside": outside},
        criteria={
            "mean_within_3se": abs(mean - 1) <= 3 * error + 1e-12,
            "outside_limits_below_1pct": outside < CONCENTRATION_TAIL,
        },
        seed=seed,
        samples=trials,
        interval={"mean": bootstrap_interval(ratio, resamples=bootstrap, seed=seed, task=name)},
    )


def tkn_concentration(
    k: int,
    n: int,
    trials: int,
    *,
    seed: int = 0,
    d2: float = 0.25,
    tolerance: float = 0.1,
    check_mean: bool = True,
    bootstrap: int = 1000,
    threads: int | None = None,
    samples: WalkSamples | None = None,
) -> VerifyReport:
    """T(k, n) k / n: mean against 1/2 and the fitted band [c1, C1]."""
    data = _samples(samples, seed=seed, n=n, trials=trials, depths=(k,), threads=threads)
    totals = data.totals[:, data.column(k)]
    name = f"tkn_concentration[k={k},n={n}]"
    if n == 0:
        return VerifyReport(
            name=name,
            mode=Mode.MONTE_CARLO,
            instances=trials,
            constants={"mean": 0.0},
            criteria={"zero_at_origin": bool(np.all(totals == 0))},
            seed=seed,
            samples=trials,
        )

    valid = n >= 16 and k <= d2 * math.sqrt(n) / (2 * math.sqrt(loglog(n)))
    ratio = totals * (k / n)
    mean = float(ratio.mean())
    c1, big_c1 = central_band(ratio)
    criteria = {}
    if check_mean and valid:
        criteria["mean_near_half"] = abs(mean - 0.5) <= tolerance * 0.5
    return VerifyReport(
        name=name,
        mode=Mode.MONTE_CARLO,
        instances=trials,
        constants={"mean": mean, "stderr": standard_error(ratio), "c1": c1, "C1": big_c1},
        criteria=criteria,
        seed=seed,
        samples=trials,
        interval={"mean": bootstrap_interval(ratio, resamples=bootstrap, seed=seed, task=name)},
        details={"valid": valid, "tolerance": tolerance},
    )


def max_excursion_tail(
    k: int,
    n: int,
    trials: int,
    *,
    seed: int = 0,
    bootstrap: int = 1000,
    threads: int | None = None,
    samples: WalkSamples | None = None,
) -> VerifyReport:
    """max_x T(k, x, n) k / sqrt(n log log n); C is the 99.9th percentile.

    Stability: C fitted on the first half of the trials must bound the second
    half up to a factor 2 except for a fraction below 0.5%.
    """
    data = _samples(samples, seed=seed, n=n, trials=trials, depths=(k,), threads=threads)
    ratio = data.maxima[:, data.column(k)] * (k / math.sqrt(n * loglog(n)))
    c_hat = float(np.percentile(ratio, 99.9))
    half = trials // 2
    c_half = float(np.percentile(ratio[:half], 99.9)) if half else c_hat
    above = float(np.mean(ratio[half:] > 2 * c_half)) if trials - half else 0.0
    name = f"max_excursion_tail[k={k},n={n}]"
    return VerifyReport(
        name=name,
        mode=Mode.MONTE_CARLO,
        instances=trials,
        constants={"C": c_hat, "C_half": c_half, "above_twice_half": above},
        criteria={"finite": math.isfinite(c_hat), "split_stable": above < SPLIT_TAIL},
        seed=seed,
        samples=trials,
        interval={
            "C": bootstrap_interval(
                ratio,
                functools.partial(np.percentile, q=99.9),
                resamples=bootstrap,
                seed=seed,
                task=name,
            )
        },
    )


def truncated_sum_bounds(
    k: int,
    l: float,
    n: int,
    trials: int,
    *,
    seed: int = 0,
    bootstrap: int = 1000,
    threads: int | None = None,
    samples: WalkSamples | None = None,
) -> VerifyReport:
    """sum_x min(T(k, x, n), l) against min(n/k, sqrt(n/LL) l) and, at range-high ends,
    min(n/k, sqrt(n LL) l); the fitted lower constants are the 1st percentiles.
    """
    data = _samples(
        samples, seed=seed, n=n, trials=trials, depths=(k,), cap=l, threads=threads
    )
    truncated = data.truncated[:, data.column(k)].astype(np.float64)
    name = f"truncated_sum_bounds[k={k},l={l},n={n}]"
    if l == 0:
        return VerifyReport(
            name=name,
            mode=Mode.MONTE_CARLO,
            instances=trials,
            criteria={"zero_cap_zero_sum": bool(np.all(truncated == 0))},
            seed=seed,
            samples=trials,
            details={"degenerate": True},
        )

    ll = loglog(n)
    always = truncated / min(n / k, math.sqrt(n / ll) * l)
    high = np.array([classify_range(int(size), n) is RangeTag.HIGH for size in data.ranges])
    constants = {"c2": float(np.percentile(always, 1))}
    interval = {
        "c2": bootstrap_interval(
            always,
            functools.partial(np.percentile, q=1),
            resamples=bootstrap,
            seed=seed,
            task=name,
        )
    }
    if high.any():
        often = truncated[high] / min(n / k, math.sqrt(n * ll) * l)
        constants["c3"] = float(np.percentile(often, 1))
        interval["c3"] = bootstrap_interval(
            often,
            functools.partial(np.percentile, q=1),
            resamples=bootstrap,
            seed=seed,
            task=f"{name}/range-high",
        )
    return VerifyReport(
        name=name,
        mode=Mode.MONTE_CARLO,
        instances=trials,
        constants=constants,
        criteria={"c2_positive": constants["c2"] > 0},
        seed=seed,
        samples=trials,
        interval=interval,
        details={"range_high_trials": int(high.sum())},
    )


def quadratic_rates(
    survival: dict[int, float], levels: tuple[int, ...] = LOCAL_TIME_LEVELS
) -> dict[int, float]:
    """C' implied between u and the next level by log S(u) = log C + 2 log u - C' u^2.

    Only pairs with u >= 2 and both survivals positive contribute.
    """
    rates: dict[int, float] = {}
    for u, v in zip(levels, levels[1:]):
        if u < QUADRATIC_FROM or survival[u] <= 0 or survival[v] <= 0:
            continue
        drop = math.log(survival[u] / survival[v]) + 2 * math.log(v / u)
        rates[u] = drop / (v * v - u * u)
    return rates


def decays_quadratically(rates: dict[int, float], slack: float = QUADRATIC_SLACK) -> bool:
    """Every implied C' is positive and none falls below (1 - slack) times its predecessor.

    A pure exponential tail gives rates shrinking like 1 / (2u + 1) and fails.
    """
    values = [rates[u] for u in sorted(rates)]
    if any(value <= 0 for value in values):
        return False
    return all(later >= (1 - slack) * earlier for earlier, later in zip(values, values[1:]))


def local_time_tail(
    n: int,
    trials: int,
    *,
    seed: int = 0,
    bootstrap: int = 1000,
    threads: int | None = None,
    samples: WalkSamples | None = None,
) -> VerifyReport:
    """Survival of L(n)/sqrt(n) at fixed levels and a fit of log S(u) ~ log C + 2 log u - C' u^2."""
    data = _samples(samples, seed=seed, n=n, trials=trials, threads=threads)
    ratio = data.max_local / math.sqrt(n)
    survival = {u: float(np.mean(ratio >= u)) for u in LOCAL_TIME_LEVELS}
    rates = quadratic_rates(survival)
    floor = np.ceil((n + 1) / data.ranges)
    constants = {f"survival_{u}": value for u, value in survival.items()}
    constants["p99"] = float(np.percentile(ratio, 99))
    constants.update({f"C_prime_{u}": value for u, value in rates.items()})

    fitted = [u for u in LOCAL_TIME_LEVELS if survival[u] > 0]
    if len(fitted) >= 2:
        u = np.array(fitted, dtype=np.float64)
        target = np.log([survival[value] for value in fitted]) - 2 * np.log(u)
        slope, intercept = np.polyfit(u * u, target, 1)
        constants["C"] = float(math.exp(intercept))
        constants["C_prime"] = float(-slope)
    name = f"local_time_tail[n={n}]"
    return VerifyReport(
        name=name,
        mode=Mode.MONTE_CARLO,
        instances=trials,
        constants=constants,
        criteria={
            "p99_below_6": constants["p99"] < LOCAL_TIME_P99,
            "tail_quadratic": decays_quadratically(rates),
            "pigeonhole_floor": bool(np.all(data.max_local >= floor)),
        },
        seed=seed,
        samples=trials,
        interval={
            "p99": bootstrap_interval(
                ratio,
                functools.partial(np.percentile, q=99),
                resamples=bootstrap,
                seed=seed,
                task=name,
            )
        },
        details={"rated_levels": sorted(rates)},
    )


def max_at_most(n: int, m: int) -> float:
    """P(max_{t <= n} S_t <= m) = P(-m - 1 <= S_n <= m), by reflection.

    S_n = 2J - n with J ~ Binomial(n, 1/2).
    """
    if m < 0:
        return 0.0
    lo = max(0, math.ceil((n - m - 1) / 2))
    hi = min(n, (n + m) // 2)
    return float(binom.cdf(hi, n, 0.5) - binom.cdf(lo - 1, n, 0.5))


def decreasing_within_noise(frequencies: list[float], trials: int, z: float = TREND_Z) -> bool:
    """No frequency exceeds its predecessor by more than z standard errors of the difference."""
    for earlier, later in zip(frequencies, frequencies[1:]):
        spread = math.sqrt((earlier * (1 - earlier) + later * (1 - later)) / trials)
        if later > earlier + z * spread:
            return False
    return True


def min_max_small_ball(
    ns: Iterable[int],
    trials: int,
    *,
    seed: int = 0,
    bootstrap: int = 1000,
    threads: int | None = None,
) -> VerifyReport:
    """Frequency of max S_t <= (pi/4) sqrt(n / log log n) along ``ns``.

    Each frequency must fall in the central binomial interval of the exact
    probability of the same event, and the frequencies must not rise with n
    beyond sampling noise; the fitted c' is the largest frequency times log^3 n.
    """
    rows = []
    matches = True
    c_prime = 0.0
    for n in sorted(ns):
        if n < 16 or loglog(n) <= 1:
            rows.append({"n": n, "skipped": True})
            continue
        threshold = math.pi / 4 * math.sqrt(n / loglog(n))
        data = sample_walks(seed, n, trials, threads=threads)
        hits = (data.max_position <= threshold).astype(np.float64)
        frequency = float(hits.mean())
        exact = max_at_most(n, math.floor(threshold))
        low, high = binom.interval(SMALL_BALL_LEVEL, trials, exact)
        matches &= bool(low <= hits.sum() <= high)
        c_prime = max(c_prime, frequency * math.log(n) ** 3)
        rows.append(
            {
                "n": n,
                "frequency": frequency,
                "exact": exact,
                "interval": list(
                    bootstrap_interval(
                        hits, resamples=bootstrap, seed=seed, task=f"small_ball[n={n}]"
                    )
                ),
            }
        )
    evaluated = [row for row in rows if not row.get("skipped")]
    return VerifyReport(
        name="min_max_small_ball",
        mode=Mode.MONTE_CARLO,
        instances=len(evaluated) * trials,
        constants={"c_prime": c_prime},
        criteria={
            "matches_reflection_law": matches,
            "frequency_decreasing": decreasing_within_noise(
                [row["frequency"] for row in evaluated], trials
            ),
        },
        seed=seed,
        samples=trials,
        details={"rows": rows},
    )
