from __future__ import annotations

import json

import pytest

from excursionlab.config import (
    ExperimentConfig,
    LayerBuildSpec,
    SimulateSpec,
    VerifySpec,
    from_mapping,
    parse_config,
    to_dict,
    with_overrides,
)
from excursionlab.errors import ConfigError


def test_defaults_are_applied() -> None:
    config = from_mapping({"n_max": 1024, "f": "powerlaw:0.75"}, "lil")
    assert isinstance(config, ExperimentConfig)
    assert config.trials == 8
    assert config.r == 0.125
    assert config.records == "records.csv"


def test_kind_field_is_optional_but_must_match() -> None:
    assert from_mapping({"kind": "simulate", "n": 10}, "simulate") == SimulateSpec(n=10)
    with pytest.raises(ConfigError) as excinfo:
        from_mapping({"kind": "verify"}, "lil")
    assert excinfo.value.pointer == "/kind"


@pytest.mark.parametrize(
    ("payload", "pointer"),
    [
        ({"n_max": 1024, "f": "powerlaw:0.75", "trials": 0}, "/trials"),
        ({"n_max": 1024, "f": "powerlaw:0.75", "colour": "red"}, "/colour"),
        ({"n_max": 8, "f": "powerlaw:0.75"}, "/n_max"),
        ({"n_max": 1024, "f": "cubic"}, "/f"),
        ({"n_max": 1024, "layers": {"k": [1, 0], "l": [1, 2]}}, "/layers"),
    ],
)
def test_schema_errors_carry_a_pointer(payload, pointer: str) -> None:
    with pytest.raises(ConfigError) as excinfo:
        from_mapping(payload, "lil")
    assert excinfo.value.pointer == pointer
    assert str(excinfo.value).startswith(pointer)


def test_missing_required_key() -> None:
    with pytest.raises(ConfigError, match="n_max"):
        from_mapping({"f": "powerlaw:0.75"}, "lil")


def test_speed_and_layers_are_exclusive() -> None:
    with pytest.raises(ConfigError, match="mutually exclusive"):
        from_mapping({"n_max": 64, "f": "powerlaw:0.75", "layers": {"k": [1], "l": [1]}}, "lil")
    with pytest.raises(ConfigError, match="required"):
        from_mapping({"n_max": 64}, "lil")


def test_unknown_kind() -> None:
    with pytest.raises(ConfigError, match="unknown configuration kind"):
        from_mapping({}, "plot")


def test_lists_become_tuples() -> None:
    spec = from_mapping({"band_depths": [2, 8], "small_ball_ns": [4096]}, "verify")
    assert isinstance(spec, VerifySpec)
    assert spec.band_depths == (2, 8)
    assert spec.small_ball_ns == (4096,)


def test_round_trip_through_dict() -> None:
    spec = LayerBuildSpec(f="powerlaw:0.75", xmax=1e6)
    payload = to_dict(spec)
    assert payload["kind"] == "build-layers"
    assert from_mapping(payload, "build-layers") == spec
    verify = VerifySpec(reflection_depths=(1, 2))
    assert to_dict(verify)["reflection_depths"] == [1, 2]
    assert from_mapping(json.loads(json.dumps(to_dict(verify))), "verify") == verify


def test_parse_config_file(tmp_path) -> None:
    path = tmp_path / "lil.json"
    path.write_text(json.dumps({"n_max": 256, "f": "powerlaw:0.75"}), encoding="utf-8")
    assert parse_config(path, "lil").n_max == 256
    with pytest.raises(ConfigError, match="not found"):
        parse_config(tmp_path / "missing.json", "lil")
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid JSON"):
        parse_config(broken, "lil")


def test_overrides_win_over_document_values() -> None:
    payload = {"n": 100, "trials": 2, "seed": 1}
    spec = with_overrides(payload, "simulate", seed=9, trials=None, depths=(2, 4), suite="exact")
    assert spec == SimulateSpec(n=100, trials=2, seed=9, depths=(2, 4))
    assert payload == {"n": 100, "trials": 2, "seed": 1}


def test_overrides_are_validated() -> None:
    with pytest.raises(ConfigError) as excinfo:
        with_overrides({"n_max": 64, "f": "powerlaw:0.75"}, "lil", trials=0)
    assert excinfo.value.pointer == "/trials"


def test_empty_payload_takes_every_default() -> None:
    assert with_overrides(None, "verify") == VerifySpec()
