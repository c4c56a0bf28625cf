"""The k-induced walk: S observed at successive first passages to distance k."""

from __future__ import annotations

import numpy as np

from excursionlab.excursions.kernels import first_passages
from excursionlab.excursions.stats import check_depth, check_time
from excursionlab.models import InducedWalk, LocalTimeField, SiteCounts, Trajectory
from excursionlab.walk.sites import SiteArray


def _down_sites(path: np.ndarray) -> np.ndarray:
    """Sites from which ``path`` steps down by one."""
    return path[:-1][np.diff(path) == -1]


def _counts(sites: np.ndarray, cls: type[SiteCounts] = SiteCounts, **extra) -> SiteCounts:
    if sites.size == 0:
        return cls.empty(**extra)
    low = int(sites.min())
    return cls.from_dense(low, np.bincount(sites - low), **extra)


def induce_walk(traj: Trajectory, k: int, n: int) -> InducedWalk:
    check_depth(k)
    check_time(traj, n)
    prefix = traj.prefix(n)
    passages, _ = first_passages(prefix, k, 0)
    jump_times = np.concatenate((np.zeros(1, dtype=np.int64), passages))
    positions = prefix[jump_times] // k
    steps = int(jump_times.shape[0]) - 1
    jump_times.flags.writeable = False
    positions.flags.writeable = False
    return InducedWalk(
        k=k,
        n=n,
        jump_times=jump_times,
        positions=positions,
        local=_counts(positions, LocalTimeField, n=steps),
        down_steps=_counts(_down_sites(positions)),
    )


class InducedCounter:
    """Streaming N_k(n), L^(k) and down-step counts of the k-induced walk."""

    def __init__(self, k: int) -> None:
        check_depth(k)
        self.k = k
        self.steps = 0
        self._anchor = 0
        self._last = 0
        self._local = SiteArray()
        self._down = SiteArray()
        self._local.add(np.zeros(1, dtype=np.int64))

    def update(self, positions: np.ndarray) -> None:
        passages, self._anchor = first_passages(positions, self.k, self._anchor)
        if passages.size == 0:
            return
        visited = positions[passages] // self.k
        self._local.add(visited)
        path = np.concatenate((np.array([self._last], dtype=np.int64), visited))
        self._down.add(_down_sites(path))
        self._last = int(visited[-1])
        self.steps += int(visited.shape[0])

    def local_times(self) -> LocalTimeField:
        return self._local.snapshot(LocalTimeField, n=self.steps)

    def down_steps(self) -> SiteCounts:
        return self._down.snapshot()
