from __future__ import annotations

import pytest

from excursionlab.distance import (
    DistanceModel,
    SnapshotSource,
    TrajectorySource,
    layer_lower_proxy,
    layer_upper,
    total_lower,
    total_upper,
)
from excursionlab.errors import HorizonError, ParameterError
from excursionlab.excursions import excursion_field
from excursionlab.models import ExcursionTally, LayerParams
from excursionlab.walk import generate_walk


def test_zigzag_layer_bounds(zigzag_path, dyadic_layers) -> None:
    assert layer_upper(zigzag_path, dyadic_layers, 0, 4) == 33.0
    assert layer_upper(zigzag_path, dyadic_layers, 1, 4) == 55.0
    assert layer_lower_proxy(zigzag_path, dyadic_layers, 0, 4) == pytest.approx(1 / 16)
    assert layer_lower_proxy(zigzag_path, dyadic_layers, 0, 4, sigma=0.5) == pytest.approx(1 / 32)
    assert total_upper(zigzag_path, dyadic_layers, 4) == 44_000.0


def test_zigzag_totals(zigzag_path, dyadic_layers) -> None:
    totals = total_lower(zigzag_path, dyadic_layers, 4)
    assert totals.n == 4
    assert totals.lower == pytest.approx(1 / 16)
    assert totals.layers_evaluated == (0, 1)
    assert totals.critical_pair is None


def test_layer_rows(zigzag_path, dyadic_layers) -> None:
    rows = DistanceModel(dyadic_layers).rows(TrajectorySource(zigzag_path, 4))
    assert [row.to_row() for row in rows] == [
        (4, 0, 1, 1, 33.0, 1 / 16, 0),
        (4, 1, 2, 2, 55.0, 0.0, 0),
    ]


def test_depths_cover_layers_and_half_depths(dyadic_layers) -> None:
    assert DistanceModel(dyadic_layers).depths(16) == [1, 2, 4, 8, 16]


@pytest.mark.parametrize(
    "overrides", [{"sigma": 0.0}, {"c0": 1.5}, {"d2": 0.0}, {"sigma": -1.0}]
)
def test_model_validates_constants(dyadic_layers, overrides) -> None:
    with pytest.raises(ParameterError):
        DistanceModel(dyadic_layers, **overrides)


def test_validity_threshold(dyadic_layers) -> None:
    model = DistanceModel(dyadic_layers, d2=0.25)
    assert not model.valid(0, 8)
    # d2 sqrt(n / log log n) is about 158 at n = 2^20
    assert model.valid(7, 2**20)
    assert not model.valid(8, 2**20)


def test_snapshot_source_fills_in_deep_tallies() -> None:
    tally = ExcursionTally.from_mapping({0: 2}, k=1, n=10)
    source = SnapshotSource(10, 4, {1: tally})
    assert source.tally(1) is tally
    assert source.tally(4).total == 0
    with pytest.raises(HorizonError):
        source.tally(2)


def test_snapshot_and_trajectory_sources_agree(dyadic_layers) -> None:
    n = 4_096
    traj = generate_walk(17, n)
    model = DistanceModel(dyadic_layers)
    direct = TrajectorySource(traj, n)
    tallies = {k: excursion_field(traj, k, n) for k in model.depths(n)}
    snapshot = SnapshotSource(n, direct.range_size, tallies)
    assert model.total_upper(snapshot) == model.total_upper(direct)
    assert model.totals(snapshot) == model.totals(direct)
    assert model.shape_constants(snapshot) == model.shape_constants(direct)


def test_lower_proxy_stays_below_upper_bound(dyadic_layers) -> None:
    n = 20_000
    traj = generate_walk(5, n)
    model = DistanceModel(dyadic_layers)
    source = TrajectorySource(traj, n)
    for row in model.rows(source):
        assert 0 <= row.lower_proxy <= row.upper


def test_shape_constants_cover_every_regime(dyadic_layers) -> None:
    n = 2**14
    source = TrajectorySource(generate_walk(8, n), n)
    constants = DistanceModel(dyadic_layers).shape_constants(source)
    assert set(constants) == {
        "limsup_low",
        "limsup_mid",
        "limsup_high",
        "liminf_low",
        "liminf_high",
    }
    assert constants["limsup_low"] > 0
    assert all(value >= 0 for value in constants.values())


def test_critical_pair_needs_a_successor(zigzag_path) -> None:
    short = LayerParams.from_sequences([1, 2], [1, 2], m0=2.0)
    model = DistanceModel(short)
    with pytest.raises(HorizonError):
        model.critical_pair(TrajectorySource(zigzag_path, 4), 1)


def test_full_depths_can_be_capped() -> None:
    triadic = LayerParams.from_sequences([1, 3, 9, 27, 81], [1, 3, 9, 27, 81], m0=3.0)
    model = DistanceModel(triadic)
    assert model.depths(100) == [1, 3, 4, 9, 13, 27, 40, 81]
    assert model.depths(100, full_through=1) == [1, 3, 4, 13, 40]


def test_lower_top_covers_critical_and_valid_layers(dyadic_layers) -> None:
    model = DistanceModel(dyadic_layers, r=0.125, d2=0.25)
    n = 2**20
    top = model.lower_top(n)
    assert top == 7
    assert top >= model.critical(SnapshotSource(n, 2, {})).s0_prime
    assert model.valid(top, n) and not model.valid(top + 1, n)
    with pytest.raises(ParameterError):
        model.lower_top(15)


def test_rows_can_be_cut(tent_path, dyadic_layers) -> None:
    model = DistanceModel(dyadic_layers)
    source = TrajectorySource(tent_path, 8)
    assert [row.s for row in model.rows(source)] == [0, 1, 2]
    assert [row.s for row in model.rows(source, through=1)] == [0, 1]
