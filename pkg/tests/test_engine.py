from __future__ import annotations

import numpy as np
import pytest

from excursionlab.errors import HorizonError, ParameterError
from excursionlab.models import TrajectorySummary
from excursionlab.walk import (
    BLOCK_STEPS,
    WalkAccumulator,
    generate_walk,
    local_times,
    range_size,
    running_extrema,
    stream_walk,
)


class FakeSource:
    """Repeats a fixed pattern; every block is the pattern once."""

    def __init__(self, pattern: list[int]) -> None:
        self.pattern = np.array(pattern, dtype=np.int8)
        self.block_steps = len(pattern)
        self.requested: list[int] = []

    def block(self, index: int) -> np.ndarray:
        self.requested.append(index)
        return self.pattern.copy()


def _concat(blocks) -> np.ndarray:
    return np.concatenate([block.positions for block in blocks])


def test_generate_walk_uses_injected_source() -> None:
    source = FakeSource([1, 1, -1, 1])
    traj = generate_walk(0, 6, source=source)
    assert traj.positions.tolist() == [0, 1, 2, 1, 2, 3, 4]
    assert source.requested == [0, 1]


def test_generate_walk_is_deterministic() -> None:
    first = generate_walk(5, 1000, trial=1)
    second = generate_walk(5, 1000, trial=1)
    assert np.array_equal(first.positions, second.positions)
    assert first.positions[0] == 0
    assert first.length == 1000


@pytest.mark.parametrize("chunk", [1, 7, 1000, BLOCK_STEPS])
def test_stream_matches_materialized_walk(chunk: int) -> None:
    n = BLOCK_STEPS + 4_465
    traj = generate_walk(9, n, trial=4)
    streamed = _concat(stream_walk(9, n, trial=4, chunk=chunk))
    assert np.array_equal(streamed, traj.positions)


def test_stream_block_times_are_contiguous() -> None:
    blocks = list(stream_walk(1, 25, chunk=10))
    assert [(block.start, block.stop) for block in blocks] == [(0, 10), (11, 20), (21, 25)]


def test_stream_of_zero_steps_is_the_origin() -> None:
    blocks = list(stream_walk(1, 0))
    assert len(blocks) == 1
    assert blocks[0].positions.tolist() == [0]


def test_negative_length_is_rejected() -> None:
    with pytest.raises(ParameterError):
        generate_walk(0, -1)
    with pytest.raises(ParameterError):
        list(stream_walk(0, -1))


def test_materialization_limit() -> None:
    with pytest.raises(ParameterError):
        generate_walk(0, 101, limit=100)


def test_site_statistics(zigzag_path) -> None:
    assert range_size(zigzag_path, 4) == 3
    assert range_size(zigzag_path, 1) == 2
    assert local_times(zigzag_path, 4).as_dict() == {-1: 1, 0: 3, 1: 1}
    assert local_times(zigzag_path, 4).maximum == 3
    assert running_extrema(zigzag_path, 4) == (-1, 1)


def test_site_statistics_reject_times_past_the_path(zigzag_path) -> None:
    with pytest.raises(HorizonError):
        range_size(zigzag_path, 5)
    with pytest.raises(HorizonError):
        local_times(zigzag_path, -1)


def test_accumulator_matches_materialized_statistics() -> None:
    n = 20_000
    traj = generate_walk(3, n)
    walker = WalkAccumulator()
    for block in stream_walk(3, n, chunk=999):
        walker.consume(block)
    assert walker.time == n
    assert walker.position == int(traj.positions[-1])
    assert walker.range_size == range_size(traj, n)
    assert walker.local_times().as_dict() == local_times(traj, n).as_dict()
    summary = walker.summary(3)
    assert summary == TrajectorySummary(
        seed=3,
        n=n,
        final_position=int(traj.positions[-1]),
        min=int(traj.positions.min()),
        max=int(traj.positions.max()),
        range=range_size(traj, n),
    )
