"""Excursion tallies, induced walks and sandwich evaluations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from excursionlab.models.trajectory import LocalTimeField, SiteCounts


class Completion(str, Enum):
    """When a k-excursion from x starts to count towards T(k, x, n)."""

    # after visiting x - k the walk is back at x by time n
    RETURN = "return"
    # the visit to x - k itself happens by time n
    ARRIVAL = "arrival"


@dataclass(slots=True, frozen=True)
class ExcursionTally(SiteCounts):
    """The map x -> T(k, x, n) for one depth and horizon."""

    k: int = 1
    n: int = 0
    completion: Completion = Completion.RETURN

    def to_rows(self) -> list[tuple[int, int, int, int]]:
        """CSV rows ``(k, n, x, count)`` for every site with a nonzero count."""
        return [(self.k, self.n, site, count) for site, count in self.items()]


@dataclass(slots=True, frozen=True)
class InducedWalk:
    """The k-induced walk Y_j = S_{n_j} / k observed up to time n."""

    k: int
    n: int
    jump_times: np.ndarray
    positions: np.ndarray
    local: LocalTimeField
    down_steps: SiteCounts

    @property
    def steps(self) -> int:
        """N_k(n)."""
        return int(self.jump_times.shape[0]) - 1


@dataclass(slots=True, frozen=True)
class SandwichResult:
    """Both sides and the middle of the induced-walk sandwich around T(k, x, n).

    ``lower`` already includes the unit slack, i.e. it is the down-step count of
    the 2k-induced walk minus one. ``lower_applies`` is False for sites more than
    k below the next multiple of 2k, where only the upper side is enforced.
    """

    k: int
    x: int
    n: int
    lower: int
    mid: int
    upper: int
    lower_applies: bool

    @property
    def ok(self) -> bool:
        if self.mid > self.upper:
            return False
        return not self.lower_applies or self.lower <= self.mid

    def as_tuple(self) -> tuple[int, int, int, bool]:
        return self.lower, self.mid, self.upper, self.ok
