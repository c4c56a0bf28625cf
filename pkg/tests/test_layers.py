from __future__ import annotations

import math

import pytest

from excursionlab.errors import HorizonError, ParameterError, SpeedFunctionError
from excursionlab.layers import (
    GeometricGrid,
    LogLogTable,
    PowerLaw,
    approximation_band,
    build_layers,
    critical_layers,
    fbar,
    horizon,
    last_index,
    layers_for_horizon,
    loglog,
    parse_speed_spec,
    s0_index,
    s1_index,
    scaling_from_f,
    scaling_g,
    scaling_g_with_slack,
    scaling_h,
    speed_estimate,
    validate_speed,
)
from excursionlab.lil import checkpoint_grid
from excursionlab.models import LayerParams


def test_three_quarter_power_gives_dyadic_layers(dyadic_layers) -> None:
    layers = build_layers(PowerLaw(0.75), 2.0, 1e18)
    assert layers.k == dyadic_layers.k
    assert layers.l == dyadic_layers.l
    assert layers.source == "powerlaw:0.75"
    assert not layers.terminated


def test_linear_speed_closes_with_infinite_l() -> None:
    layers = build_layers(PowerLaw(1.0), 2.0, 1e6)
    assert layers.k == (1, 2)
    assert layers.l == (1, math.inf)
    assert layers.tail == "linear"
    assert horizon(layers) == math.inf
    assert fbar(layers, 100.0) == pytest.approx(60.0)


def test_diffusive_speed_closes_with_infinite_k() -> None:
    layers = build_layers(PowerLaw(0.5), 2.0, 1e6)
    assert layers.k == (1, math.inf)
    assert layers.tail == "diffusive"
    assert fbar(layers, 100.0) == pytest.approx(10.0)


def test_small_horizon_keeps_one_layer() -> None:
    layers = build_layers(PowerLaw(0.75), 2.0, 10)
    assert layers.k == (1, 2)
    assert layers.l == (1, 2)


def test_builder_validates_arguments() -> None:
    with pytest.raises(ParameterError):
        build_layers(PowerLaw(0.75), 1.0, 100)
    with pytest.raises(ParameterError):
        build_layers(PowerLaw(0.75), 2.0, 0.5)
    with pytest.raises(SpeedFunctionError, match="f/sqrt"):
        build_layers(PowerLaw(0.3), 2.0, 100)


def test_layers_for_horizon_reaches_past_n() -> None:
    layers = layers_for_horizon(PowerLaw(0.75), 2.0, 1000)
    assert layers.k[-1] > 1001
    assert layers.k[-1] == 1024


@pytest.mark.parametrize("s", range(15))
def test_fbar_at_bracket_starts(dyadic_layers, s: int) -> None:
    assert fbar(dyadic_layers, 16.0**s) == pytest.approx(1.5 * 8.0**s)


def test_fbar_domain(dyadic_layers) -> None:
    assert horizon(dyadic_layers) == 2.0**60
    with pytest.raises(HorizonError):
        fbar(dyadic_layers, 2.0**60)
    with pytest.raises(ParameterError):
        fbar(dyadic_layers, 0.5)


def test_fbar_tracks_f(dyadic_layers) -> None:
    low, high = approximation_band(PowerLaw(0.75), dyadic_layers, points=400)
    assert 0.25 <= low <= high <= 4.0


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_fbar_tracks_f_across_exponents(alpha: float) -> None:
    f = PowerLaw(alpha)
    low, high = approximation_band(f, build_layers(f, 2.0, 1e18), points=400)
    assert 0.5 <= low <= high <= 2.0


def test_approximation_band_needs_two_layers() -> None:
    single = LayerParams.from_sequences([1], [1], m0=2.0)
    with pytest.raises(ParameterError):
        approximation_band(PowerLaw(0.75), single)


def test_validate_speed_flags_each_hypothesis() -> None:
    grid = GeometricGrid(x_max=1e6)
    assert validate_speed(PowerLaw(0.75), grid).accepted
    assert validate_speed(PowerLaw(1.2), grid).failed_checks() == {"x/f nondecreasing"}
    assert validate_speed(PowerLaw(0.3), grid).failed_checks() == {"f/sqrt(x) nondecreasing"}
    strict = validate_speed(PowerLaw(0.5, epsilon=0.1), grid)
    assert strict.failed_checks() == {"f/(sqrt(x) loglog(x)^(1+eps)) nondecreasing"}


def test_validate_speed_requires_unit_at_one() -> None:
    table = LogLogTable(log_x=(0.0, math.log(10)), log_f=(math.log(2), math.log(20)))
    with pytest.raises(SpeedFunctionError, match="f\\(1\\)"):
        validate_speed(table, GeometricGrid(x_max=100))


def test_grid_validation() -> None:
    with pytest.raises(ParameterError):
        GeometricGrid(x_max=0.5)
    with pytest.raises(ParameterError):
        GeometricGrid(x_max=10, points=0)


def test_parse_power_law() -> None:
    f = parse_speed_spec("powerlaw:0.75", epsilon=0.1)
    assert f == PowerLaw(0.75, epsilon=0.1)
    assert f(16.0) == pytest.approx(8.0)


@pytest.mark.parametrize("text", ["powerlaw", "powerlaw:", "powerlaw:fast", "cubic:2"])
def test_parse_rejects_bad_specs(text: str) -> None:
    with pytest.raises(SpeedFunctionError):
        parse_speed_spec(text)


def test_table_speed_interpolates_and_extends(tmp_path) -> None:
    path = tmp_path / "speed.csv"
    path.write_text("x,f\n1,1\n100,10\n", encoding="utf-8")
    f = parse_speed_spec("table:speed.csv", base_dir=tmp_path)
    assert f.name == f"table:{path}"
    assert f(10.0) == pytest.approx(10**0.5)
    assert f(10_000.0) == pytest.approx(100.0)


def test_table_errors(tmp_path) -> None:
    with pytest.raises(SpeedFunctionError, match="not found"):
        LogLogTable.from_csv(tmp_path / "missing.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("1,1\n2,-3\n", encoding="utf-8")
    with pytest.raises(SpeedFunctionError, match="positive"):
        LogLogTable.from_csv(bad)
    short = tmp_path / "short.csv"
    short.write_text("1,1\n", encoding="utf-8")
    with pytest.raises(SpeedFunctionError, match="two"):
        LogLogTable.from_csv(short)


def test_loglog_domain() -> None:
    assert loglog(math.exp(math.e**2)) == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        loglog(15)


def test_scaling_from_linear_speed_is_n() -> None:
    f = PowerLaw(1.0)
    assert scaling_from_f(f, 2**20, "limsup") == pytest.approx(2**20)
    assert scaling_from_f(f, 2**20, "liminf") == pytest.approx(2**20)
    with pytest.raises(ParameterError):
        scaling_from_f(f, 2**20, "median")


N = 2**20
R = 0.125


def _narrow(n: int, r: float = 1.0) -> float:
    return r * math.sqrt(n) / math.sqrt(loglog(n))


def test_critical_layers_at_two_to_the_twenty(dyadic_layers) -> None:
    critical = critical_layers(dyadic_layers, N, R, range_size=100)
    assert (critical.s0, critical.s0_prime, critical.s1) == (6, 6, 5)
    assert (critical.s2, critical.s3, critical.s3_tilde) == (3, 5, 5)


def test_critical_layers_validate_arguments(dyadic_layers) -> None:
    with pytest.raises(ParameterError):
        critical_layers(dyadic_layers, 15, R)
    with pytest.raises(ParameterError):
        critical_layers(dyadic_layers, N, 0.0)
    assert critical_layers(dyadic_layers, N, R).s0 is None


@pytest.mark.parametrize("checkpoint", checkpoint_grid(2**36), ids=lambda c: f"n={c.n}")
def test_critical_indices_are_last_layers_passing(dyadic_layers, checkpoint) -> None:
    n = checkpoint.n
    critical = critical_layers(dyadic_layers, n, R)
    k, product = dyadic_layers.k, dyadic_layers.product
    predicates = [
        (critical.s0_prime, lambda s: k[s] <= _narrow(n, R)),
        (critical.s1, lambda s: product(s) <= math.sqrt(n)),
        (critical.s2, lambda s: product(s) <= _narrow(n, R)),
        (critical.s3, lambda s: product(s) <= math.sqrt(n * loglog(n))),
    ]
    for index, predicate in predicates:
        assert index == 0 or predicate(index)
        assert not predicate(index + 1)
    assert critical.s3_tilde == min(critical.s0_prime, critical.s3)


def test_last_index_defaults_to_base_layer(dyadic_layers) -> None:
    assert last_index(dyadic_layers, lambda s: False) == 0
    assert last_index(dyadic_layers, lambda s: True) == dyadic_layers.last
    assert s0_index(dyadic_layers, 100) == 6
    assert s0_index(dyadic_layers, 1) == 0
    assert s1_index(dyadic_layers, N) == 5


def test_scaling_g_worked_value(dyadic_layers) -> None:
    wide = math.sqrt(N * loglog(N))
    assert scaling_g(dyadic_layers, N, R) == pytest.approx(N / 2**4 + wide * 2**3)
    assert scaling_g_with_slack(dyadic_layers, N, R) == pytest.approx(
        N / 2**4 + wide * 2**3 + wide * math.log(loglog(N))
    )


def test_scaling_h_branches(dyadic_layers) -> None:
    # s3 = 5 < s0' = 6
    assert scaling_h(dyadic_layers, N, R) == pytest.approx(N / 2**6 + _narrow(N) * 2**5)
    # a tiny band pushes s0' to the base layer, below s3
    assert scaling_h(dyadic_layers, N, 2**-10) == pytest.approx(_narrow(N))


def test_single_finite_layer_scales_diffusively() -> None:
    layers = build_layers(PowerLaw(0.5), 2.0, 1e6)
    assert scaling_g(layers, N, R) == pytest.approx(math.sqrt(N * loglog(N)))
    assert speed_estimate(layers, N) == pytest.approx(math.sqrt(N))


def test_scales_are_nondecreasing_on_checkpoints(dyadic_layers) -> None:
    times = [checkpoint.n for checkpoint in checkpoint_grid(2**36)]
    g = [scaling_g(dyadic_layers, n, R) for n in times]
    h = [scaling_h(dyadic_layers, n, R) for n in times]
    assert all(a <= b for a, b in zip(g, g[1:]))
    assert all(a <= b for a, b in zip(h, h[1:]))
    assert all(low <= high for low, high in zip(h, g))


def test_speed_estimate(dyadic_layers) -> None:
    assert speed_estimate(dyadic_layers, N) == pytest.approx(2**10 * 2**5 + N / 2**6)
    with pytest.raises(ParameterError):
        speed_estimate(dyadic_layers, 0)


def test_scaling_needs_a_successor_layer() -> None:
    short = LayerParams.from_sequences([1, 2], [1, 2], m0=2.0)
    with pytest.raises(HorizonError):
        scaling_g(short, N, R)
