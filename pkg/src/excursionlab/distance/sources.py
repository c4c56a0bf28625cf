"""Where distance bounds get their excursion tallies from."""

from __future__ import annotations

from typing import Protocol

from excursionlab.errors import HorizonError
from excursionlab.excursions import excursion_field
from excursionlab.models import Completion, ExcursionTally, Trajectory
from excursionlab.walk import range_size


class ExcursionSource(Protocol):
    """A walk prefix seen through its range and its tallies T(k, ., n)."""

    n: int
    range_size: int

    def tally(self, k: int) -> ExcursionTally: ...


class TrajectorySource:
    """Tallies computed on demand from a materialized trajectory, cached per depth."""

    def __init__(
        self, traj: Trajectory, n: int, *, completion: Completion = Completion.RETURN
    ) -> None:
        self.traj = traj
        self.n = n
        self.range_size = range_size(traj, n)
        self.completion = completion
        self._cache: dict[int, ExcursionTally] = {}

    def tally(self, k: int) -> ExcursionTally:
        if k not in self._cache:
            self._cache[k] = excursion_field(self.traj, k, self.n, completion=self.completion)
        return self._cache[k]


class SnapshotSource:
    """Tallies captured from streaming trackers at one checkpoint."""

    def __init__(self, n: int, range_size: int, tallies: dict[int, ExcursionTally]) -> None:
        self.n = n
        self.range_size = range_size
        self._tallies = tallies

    def tally(self, k: int) -> ExcursionTally:
        try:
            return self._tallies[k]
        except KeyError:
            if k >= self.range_size:
                # a k-excursion spans k + 1 sites
                return ExcursionTally.empty(k=k, n=self.n)
            raise HorizonError(f"No tally was tracked for depth {k} at n = {self.n}") from None
