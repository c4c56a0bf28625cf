"""Excursion counts T(k, x, n) and their aggregates."""

from __future__ import annotations

import math

import numpy as np

from excursionlab.errors import HorizonError, ParameterError
from excursionlab.excursions.kernels import excursion_pass
from excursionlab.models import Completion, ExcursionTally, Trajectory


def check_depth(k: int) -> None:
    if k < 1:
        raise ParameterError(f"Excursion depth must be a positive integer, got {k}")


def check_time(traj: Trajectory, n: int) -> None:
    if n < 0 or n > traj.length:
        raise HorizonError(f"Time {n} outside the trajectory horizon [0, {traj.length}]")


def count_excursions(
    traj: Trajectory,
    k: int,
    x: int,
    n: int,
    *,
    completion: Completion = Completion.RETURN,
) -> int:
    """T(k, x, n) for a single site.

    Visits to x and to x - k are reduced to an alternating run sequence; every
    run at x - k that follows a run at x starts an excursion.
    """
    check_depth(k)
    check_time(traj, n)
    prefix = traj.prefix(n)
    deep = prefix[(prefix == x) | (prefix == x - k)] == x - k
    if deep.size == 0:
        return 0
    runs = deep[np.concatenate(([True], deep[1:] != deep[:-1]))]
    if completion is Completion.ARRIVAL:
        return int(np.count_nonzero(runs[1:]))
    return int(np.count_nonzero(runs[1:-1]))


def excursion_field(
    traj: Trajectory,
    k: int,
    n: int,
    *,
    completion: Completion = Completion.RETURN,
) -> ExcursionTally:
    """T(k, x, n) for every x in one pass over S_0..S_n."""
    check_depth(k)
    check_time(traj, n)
    prefix = traj.prefix(n)
    low = int(prefix.min())
    size = int(prefix.max()) - low + 1
    phase = np.zeros(size, dtype=np.int8)
    counts = np.zeros(size, dtype=np.int64)
    excursion_pass(prefix, low, k, phase, counts, completion is Completion.RETURN)
    return ExcursionTally.from_dense(low, counts, k=k, n=n, completion=completion)


def weighted_total(tally: ExcursionTally) -> int:
    """T(k, n) = k * sum over x of T(k, kx, n)."""
    if tally.counts.size == 0:
        return 0
    sites = tally.offset + np.arange(tally.counts.shape[0])
    return tally.k * int(tally.counts[sites % tally.k == 0].sum())


def truncated_sum(tally: ExcursionTally, l: float) -> int:
    """Sum over x of min(T(k, x, n), l); ``l`` may be ``math.inf``."""
    if l < 0:
        raise ParameterError(f"Truncation cap must be nonnegative, got {l}")
    if math.isinf(l):
        return tally.total
    return int(np.minimum(tally.counts, int(l)).sum())


def max_excursions(tally: ExcursionTally) -> int:
    return tally.maximum


def total_excursions(
    traj: Trajectory, k: int, n: int, *, completion: Completion = Completion.RETURN
) -> int:
    """T(k, n) straight from a trajectory."""
    return weighted_total(excursion_field(traj, k, n, completion=completion))


def merge_tallies(first: ExcursionTally, second: ExcursionTally) -> ExcursionTally:
    """Pointwise sum of tallies from independent trials with equal (k, n, completion)."""
    if (first.k, first.n, first.completion) != (second.k, second.n, second.completion):
        raise ParameterError(
            "Only tallies with equal depth, horizon and completion rule can be merged"
        )
    if first.counts.size == 0:
        return second
    if second.counts.size == 0:
        return first
    low = min(first.offset, second.offset)
    high = max(first.offset + first.counts.size, second.offset + second.counts.size)
    merged = np.zeros(high - low, dtype=np.int64)
    for tally in (first, second):
        start = tally.offset - low
        merged[start : start + tally.counts.size] += tally.counts
    return ExcursionTally.from_dense(
        low, merged, k=first.k, n=first.n, completion=first.completion
    )


def aggregate_record(tally: ExcursionTally) -> dict[str, int]:
    """JSON record ``{k, n, T_weighted, max, sum}``."""
    return {
        "k": tally.k,
        "n": tally.n,
        "T_weighted": weighted_total(tally),
        "max": max_excursions(tally),
        "sum": tally.total,
    }
