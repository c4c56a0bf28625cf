"""Streaming excursion tallies for several checkpoints of one long walk."""

from __future__ import annotations

import numpy as np

from excursionlab.excursions.kernels import excursion_pass
from excursionlab.excursions.stats import check_depth
from excursionlab.models import Completion, ExcursionTally
from excursionlab.walk.sites import SiteArray


class ExcursionTracker:
    """Maintains T(k, ., t) while positions arrive block by block."""

    def __init__(self, k: int, *, completion: Completion = Completion.RETURN) -> None:
        check_depth(k)
        self.k = k
        self.completion = completion
        self.time = -1
        self._phase = SiteArray(np.int8)
        self._counts = SiteArray(np.int64)

    def update(self, positions: np.ndarray) -> None:
        if positions.size == 0:
            return
        low, high = int(positions.min()), int(positions.max())
        self._phase.ensure(low, high)
        self._counts.ensure(low, high)
        excursion_pass(
            positions,
            self._phase.offset,
            self.k,
            self._phase.values,
            self._counts.values,
            self.completion is Completion.RETURN,
        )
        self.time += int(positions.shape[0])

    def tally(self) -> ExcursionTally:
        return self._counts.snapshot(
            ExcursionTally, k=self.k, n=self.time, completion=self.completion
        )
