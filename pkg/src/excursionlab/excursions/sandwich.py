"""Sandwiching T(k, x, n) between local times of induced walks."""

from __future__ import annotations

import numpy as np

from excursionlab.errors import ParameterError
from excursionlab.excursions.induced import induce_walk
from excursionlab.excursions.stats import check_time, excursion_field
from excursionlab.models import Completion, SandwichResult, Trajectory


def half_depth(k: int) -> int:
    """floor(k / 2), never below 1."""
    return max(1, k // 2)


def _check(k: int) -> None:
    if k < 2:
        raise ParameterError(f"Sandwich depth must be at least 2, got {k}")


def sandwich_field(
    traj: Trajectory, k: int, n: int, *, completion: Completion = Completion.RETURN
) -> list[SandwichResult]:
    """Evaluate the sandwich at every site of the visited interval."""
    _check(k)
    check_time(traj, n)
    prefix = traj.prefix(n)
    sites = np.arange(int(prefix.min()), int(prefix.max()) + 1, dtype=np.int64)
    h = k // 2
    mid = excursion_field(traj, k, n, completion=completion).gather(sites)
    upper = induce_walk(traj, h, n).local.gather(np.floor_divide(sites, h))
    lattice = -np.floor_divide(-sites, 2 * k)
    lower = induce_walk(traj, 2 * k, n).down_steps.gather(lattice) - 1
    applies = 2 * k * lattice - sites <= k
    return [
        SandwichResult(
            k=k,
            x=int(x),
            n=n,
            lower=int(lo),
            mid=int(m),
            upper=int(up),
            lower_applies=bool(flag),
        )
        for x, lo, m, up, flag in zip(sites, lower, mid, upper, applies)
    ]


def sandwich_check(
    traj: Trajectory,
    k: int,
    x: int,
    n: int,
    *,
    completion: Completion = Completion.RETURN,
) -> SandwichResult:
    """Return (lower, mid, upper) around T(k, x, n) together with the verdict."""
    _check(k)
    check_time(traj, n)
    h = k // 2
    lattice = -((-x) // (2 * k))
    return SandwichResult(
        k=k,
        x=x,
        n=n,
        lower=induce_walk(traj, 2 * k, n).down_steps.at(lattice) - 1,
        mid=excursion_field(traj, k, n, completion=completion).at(x),
        upper=induce_walk(traj, h, n).local.at(x // h),
        lower_applies=2 * k * lattice - x <= k,
    )
