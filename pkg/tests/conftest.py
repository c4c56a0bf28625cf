"""Shared pytest fixtures."""

from __future__ import annotations

import pytest

from excursionlab.models import LayerParams, Trajectory


@pytest.fixture
def zigzag_path() -> Trajectory:
    """0, 1, 0, -1, 0."""
    return Trajectory.from_positions([0, 1, 0, -1, 0])


@pytest.fixture
def tent_path() -> Trajectory:
    """Up to 2, down to -2, back to 0."""
    return Trajectory.from_positions([0, 1, 2, 1, 0, -1, -2, -1, 0])


@pytest.fixture
def comb_path() -> Trajectory:
    """0 -> 4 -> 0 -> 4 -> 0 in unit steps."""
    return Trajectory.from_positions([0, 1, 2, 3, 4, 3, 2, 1, 0, 1, 2, 3, 4, 3, 2, 1, 0])


@pytest.fixture
def dyadic_layers() -> LayerParams:
    """k_s = l_s = 2^s, the layers of f(x) = x^(3/4) with m0 = 2."""
    return LayerParams.from_sequences(
        [2**s for s in range(16)], [2**s for s in range(16)], m0=2.0
    )
