"""Growable per-site arrays used by the streaming accumulators."""

from __future__ import annotations

import numpy as np

from excursionlab.models import SiteCounts


class SiteArray:
    """A dense array over the site interval [offset, offset + size) that grows on demand."""

    def __init__(self, dtype: type = np.int64, *, slack: int = 64) -> None:
        self.offset = 0
        self.values = np.zeros(0, dtype=dtype)
        self._slack = slack

    def ensure(self, low: int, high: int) -> None:
        """Grow so that every site in [low, high] has a slot."""
        size = self.values.shape[0]
        if size and self.offset <= low and high < self.offset + size:
            return
        if size == 0:
            new_low, new_high = low - self._slack, high + self._slack
        else:
            current_high = self.offset + size - 1
            new_low = low - self._slack if low < self.offset else self.offset
            new_high = high + self._slack if high > current_high else current_high
        grown = np.zeros(new_high - new_low + 1, dtype=self.values.dtype)
        if size:
            start = self.offset - new_low
            grown[start : start + size] = self.values
        self.offset = new_low
        self.values = grown

    def add(self, sites: np.ndarray) -> None:
        """Increment the slot of every entry of ``sites`` (repeats add up)."""
        if sites.size == 0:
            return
        low, high = int(sites.min()), int(sites.max())
        self.ensure(low, high)
        index = sites - self.offset
        self.values += np.bincount(index, minlength=self.values.shape[0]).astype(
            self.values.dtype, copy=False
        )

    def snapshot(self, cls: type[SiteCounts] = SiteCounts, **extra) -> SiteCounts:
        """Copy the nonzero span into an immutable ``SiteCounts`` (or subclass)."""
        return cls.from_dense(self.offset, self.values, **extra)
