"""Hypothesis profiles and shared strategies."""

from __future__ import annotations

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile(
    "ci",
    max_examples=300,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def steps(min_size: int = 0, max_size: int = 60) -> st.SearchStrategy[list[int]]:
    """Increment lists of a simple random walk."""
    return st.lists(st.sampled_from([-1, 1]), min_size=min_size, max_size=max_size)
