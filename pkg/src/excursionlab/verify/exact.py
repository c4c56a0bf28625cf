"""Exact-mode checks: identities and inequalities with zero tolerated violations."""

from __future__ import annotations

import logging
from typing import Iterable

import numpy as np

from excursionlab.errors import ParameterError
from excursionlab.excursions import (
    count_excursions,
    excursion_field,
    half_depth,
    sandwich_field,
    weighted_total,
)
from excursionlab.models import Completion, ExcursionTally, Mode, Trajectory, VerifyReport
from excursionlab.verify.enumerate import EXHAUSTIVE_LIMIT, all_positions
from excursionlab.verify.oracle import brute_force_excursion_oracle

logger = logging.getLogger(__name__)

EXAMPLE_LIMIT = 10


def reflection_identity_check(k: int, a: int, n_max: int) -> VerifyReport:
    """Compare #{T(k, 0, n) >= a} with #{max S_t >= 2ka} over all 2^n paths, n <= n_max.

    Paths of length n_max are enumerated once; an event fixed by the first n
    steps is counted 2^(n_max - n) times there, so dividing gives the count
    over paths of length n. The running counts at n_max are also compared with
    count_excursions path by path.
    """
    if k < 1 or a < 0:
        raise ParameterError(f"Need k >= 1 and a >= 0, got k={k}, a={a}")
    if n_max > EXHAUSTIVE_LIMIT:
        raise ParameterError(f"n_max = {n_max} exceeds the enumeration limit {EXHAUSTIVE_LIMIT}")

    paths = all_positions(n_max)
    count = np.zeros(paths.shape[0], dtype=np.int64)
    deep = np.zeros(paths.shape[0], dtype=bool)
    peak = np.zeros(paths.shape[0], dtype=np.int64)
    rows = []
    violations = 0
    for n in range(n_max + 1):
        if n > 0:
            position = paths[:, n]
            deep |= position == -k
            back = deep & (position == 0)
            count += back
            deep &= ~back
            np.maximum(peak, position, out=peak)
        scale = 1 << (n_max - n)
        left = int(np.count_nonzero(count >= a)) // scale
        right = int(np.count_nonzero(peak >= 2 * k * a)) // scale
        violations += left != right
        rows.append([n, left, right, 1 << n])

    mismatches = sum(
        count_excursions(Trajectory.from_positions(path), k, 0, n_max) != running
        for path, running in zip(paths, count)
    )
    return VerifyReport(
        name=f"reflection_identity[k={k},a={a}]",
        mode=Mode.EXACT,
        instances=n_max + 1 + paths.shape[0],
        violations=violations + mismatches,
        details={"rows": rows, "counter_mismatches": int(mismatches)},
    )


def _record(examples: list, item) -> None:
    if len(examples) < EXAMPLE_LIMIT:
        examples.append(item)


def oracle_equivalence(
    paths: Iterable[Trajectory],
    depths: Iterable[int],
    *,
    completion: Completion = Completion.RETURN,
    name: str = "oracle_equivalence",
) -> VerifyReport:
    """Site-by-site agreement of both excursion counters with the brute-force oracle."""
    depths = tuple(depths)
    instances = violations = 0
    examples: list[list[int]] = []
    for path_index, traj in enumerate(paths):
        n = traj.length
        low, high = int(traj.positions.min()), int(traj.positions.max())
        for k in depths:
            field = excursion_field(traj, k, n, completion=completion)
            for x in range(low, high + 1):
                expected = brute_force_excursion_oracle(traj, k, x, n, completion=completion)
                single = count_excursions(traj, k, x, n, completion=completion)
                instances += 1
                if field.at(x) != expected or single != expected:
                    violations += 1
                    _record(examples, [path_index, k, x, expected, field.at(x), single])
    return VerifyReport(
        name=f"{name}[{completion.value}]",
        mode=Mode.EXACT,
        instances=instances,
        violations=violations,
        details={"depths": list(depths), "examples": examples},
    )


def _dominated(first: ExcursionTally, second: ExcursionTally) -> bool:
    """Pointwise first <= second over the sites of ``first``."""
    sites = first.offset + np.arange(first.counts.shape[0])
    return bool(np.all(first.counts <= second.gather(sites)))


def inequality_suite(
    paths: Iterable[Trajectory],
    depths: Iterable[int],
    *,
    completion: Completion = Completion.RETURN,
    name: str = "inequality_suite",
) -> VerifyReport:
    """Sandwich bounds, the two-sided sum bound, the factor-3 monotonicity and time monotonicity."""
    depths = tuple(sorted(depths))
    if any(k < 2 for k in depths):
        raise ParameterError("Inequality depths must be at least 2")
    pairs = [(k, big) for k in depths for big in depths if 2 * k <= big]
    failures = dict.fromkeys(("sandwich", "sum_bounds", "monotone_depth", "monotone_time"), 0)
    examples: list[list] = []
    instances = 0

    for path_index, traj in enumerate(paths):
        n = traj.length
        fields: dict[int, ExcursionTally] = {}

        def tally(k: int) -> ExcursionTally:
            if k not in fields:
                fields[k] = excursion_field(traj, k, n, completion=completion)
            return fields[k]

        for k in depths:
            instances += 1
            sandwich = sandwich_field(traj, k, n, completion=completion)
            bad = [result.x for result in sandwich if not result.ok]
            if bad:
                failures["sandwich"] += 1
                _record(examples, ["sandwich", path_index, k, bad[0]])

            total = tally(k).total
            lower = weighted_total(tally(2 * k)) / 2
            upper = weighted_total(tally(half_depth(k)))
            if not lower <= total <= upper:
                failures["sum_bounds"] += 1
                _record(examples, ["sum_bounds", path_index, k, lower, total, upper])

            if not _dominated(excursion_field(traj, k, n // 2, completion=completion), tally(k)):
                failures["monotone_time"] += 1
                _record(examples, ["monotone_time", path_index, k])

        for k, big in pairs:
            if weighted_total(tally(big)) > 3 * weighted_total(tally(k)):
                failures["monotone_depth"] += 1
                _record(examples, ["monotone_depth", path_index, k, big])

    return VerifyReport(
        name=f"{name}[{completion.value}]",
        mode=Mode.EXACT,
        instances=instances,
        violations=sum(failures.values()),
        details={"depths": list(depths), "failures": failures, "examples": examples},
    )
