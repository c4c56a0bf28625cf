"""Ground-truth excursion counts by literal forward search from every visit."""

from __future__ import annotations

from typing import Sequence

import numpy as np
from numba import njit

from excursionlab.errors import HorizonError, ParameterError
from excursionlab.models import Completion, Trajectory


@njit(cache=True, nogil=True)
def _scan(positions, k, x, n, on_return):
    count = 0
    for j in range(n + 1):
        if positions[j] != x:
            continue
        deep = False
        for t in range(j + 1, n + 1):
            if positions[t] == x - k and not deep:
                deep = True
                if not on_return:
                    count += 1
                    break
            if positions[t] == x:
                if deep:
                    count += 1
                break
    return count


def brute_force_excursion_oracle(
    path: Trajectory | Sequence[int] | np.ndarray,
    k: int,
    x: int,
    n: int,
    *,
    completion: Completion = Completion.RETURN,
) -> int:
    """T(k, x, n) found by scanning forward from each visit to x.

    From a visit at time j the scan stops at the next visit to x. The visit
    starts an excursion if x - k is reached first; under RETURN it is counted
    only when that next visit happens by time n.
    """
    if k < 1:
        raise ParameterError(f"Excursion depth must be a positive integer, got {k}")
    if isinstance(path, Trajectory):
        positions = np.asarray(path.positions, dtype=np.int64)
    else:
        steps = np.asarray(path, dtype=np.int64)
        positions = np.concatenate(([0], np.cumsum(steps))).astype(np.int64)
    if n < 0 or n >= positions.shape[0]:
        raise HorizonError(f"Time {n} outside the path horizon [0, {positions.shape[0] - 1}]")
    return int(_scan(positions, k, x, n, completion is Completion.RETURN))
