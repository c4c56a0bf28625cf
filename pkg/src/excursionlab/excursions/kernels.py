"""Compiled per-step state machines.

Both kernels consume positions in time order and can be fed block by block:
all state lives in the arrays and the scalars passed in and returned.
"""

from __future__ import annotations

import numpy as np
from numba import njit

IDLE = 0
ARMED = 1
DEEP = 2


@njit(cache=True, nogil=True)
def excursion_pass(positions, offset, k, phase, counts, on_return):
    """Advance per-site excursion phases over ``positions``.

    ``phase[x - offset]`` is ARMED after a visit to x and DEEP once x - k has
    been visited since. ``phase`` and ``counts`` must cover every position.
    """
    size = phase.shape[0]
    for t in range(positions.shape[0]):
        i = positions[t] - offset
        j = i + k
        if j < size and phase[j] == ARMED:
            phase[j] = DEEP
            if not on_return:
                counts[j] += 1
        if on_return and phase[i] == DEEP:
            counts[i] += 1
        phase[i] = ARMED


@njit(cache=True, nogil=True)
def first_passages(positions, k, anchor):
    """Indices where the walk first sits k away from the last anchor; returns (indices, anchor)."""
    out = np.empty(positions.shape[0], dtype=np.int64)
    count = 0
    for t in range(positions.shape[0]):
        delta = positions[t] - anchor
        if delta == k or delta == -k:
            out[count] = t
            count += 1
            anchor = positions[t]
    return out[:count], anchor
