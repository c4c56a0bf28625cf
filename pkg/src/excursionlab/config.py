"""JSON configuration documents for the simulate, lil, build-layers and verify commands."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

from excursionlab.errors import ConfigError

_SEED = {"type": "integer", "minimum": 0, "maximum": 2**64 - 1}
_THREADS = {"type": ["integer", "null"], "minimum": 1}
_UNIT = {"type": "number", "exclusiveMinimum": 0, "maximum": 1}
_DEPTHS = {
    "type": "array",
    "minItems": 1,
    "items": {"anyOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]},
}
_LAYERS = {
    "type": "object",
    "additionalProperties": False,
    "required": ["k", "l"],
    "properties": {
        "m0": {"type": "number", "exclusiveMinimum": 1},
        "k": _DEPTHS,
        "l": _DEPTHS,
        "source": {"type": "string"},
        "tail": {"type": ["string", "null"]},
        "loglog_from": {"type": "integer"},
    },
}


@dataclass(slots=True, frozen=True)
class SimulateSpec:
    n: int
    trials: int = 1
    seed: int = 0
    depths: tuple[int, ...] = ()
    completion: str = "return"
    threads: int | None = None
    walks: str = "walks.csv"
    tallies: str = "tallies.csv"
    aggregates: str = "aggregates.json"

    kind = "simulate"
    schema = {
        "type": "object",
        "additionalProperties": False,
        "required": ["n"],
        "properties": {
            "kind": {"const": "simulate"},
            "n": {"type": "integer", "minimum": 0},
            "trials": {"type": "integer", "minimum": 1},
            "seed": _SEED,
            "depths": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "completion": {"enum": ["return", "arrival"]},
            "threads": _THREADS,
            "walks": {"type": "string"},
            "tallies": {"type": "string"},
            "aggregates": {"type": "string"},
        },
    }

    def check(self) -> None:
        return None


@dataclass(slots=True, frozen=True)
class ExperimentConfig:
    """Settings of one LIL experiment; either ``f`` or explicit ``layers`` is required."""

    n_max: int
    f: str | None = None
    layers: dict[str, Any] | None = None
    seed: int = 0
    trials: int = 8
    checkpoint_base: float = 2.0
    m0: float = 2.0
    epsilon: float = 0.0
    r: float = 0.125
    sigma: float = 1.0
    c0: float = 1.0
    d2: float = 0.25
    m_burnin: int = 10
    drift_slack: float = 2.0
    band_limit: float = 8.0
    threads: int | None = None
    records: str = "records.csv"
    summary: str = "summary.json"
    bounds: str = "layers_bounds.csv"

    kind = "lil"
    schema = {
        "type": "object",
        "additionalProperties": False,
        "required": ["n_max"],
        "properties": {
            "kind": {"const": "lil"},
            "n_max": {"type": "integer", "minimum": 16},
            "f": {"type": ["string", "null"], "pattern": "^(powerlaw|table):.+$"},
            "layers": {"anyOf": [_LAYERS, {"type": "null"}]},
            "seed": _SEED,
            "trials": {"type": "integer", "minimum": 1},
            "checkpoint_base": {"type": "number", "exclusiveMinimum": 1},
            "m0": {"type": "number", "exclusiveMinimum": 1},
            "epsilon": {"type": "number", "minimum": 0},
            "r": _UNIT,
            "sigma": _UNIT,
            "c0": _UNIT,
            "d2": {"type": "number", "exclusiveMinimum": 0},
            "m_burnin": {"type": "integer", "minimum": 0},
            "drift_slack": {"type": "number", "exclusiveMinimum": 1},
            "band_limit": {"type": "number", "exclusiveMinimum": 1},
            "threads": _THREADS,
            "records": {"type": "string"},
            "summary": {"type": "string"},
            "bounds": {"type": "string"},
        },
    }

    def check(self) -> None:
        if self.f is None and self.layers is None:
            raise ConfigError("", "one of 'f' or 'layers' is required")
        if self.f is not None and self.layers is not None:
            raise ConfigError("", "'f' and 'layers' are mutually exclusive")


@dataclass(slots=True, frozen=True)
class LayerBuildSpec:
    f: str
    xmax: float
    m0: float = 2.0
    epsilon: float = 0.0
    out: str = "layers.json"

    kind = "build-layers"
    schema = {
        "type": "object",
        "additionalProperties": False,
        "required": ["f", "xmax"],
        "properties": {
            "kind": {"const": "build-layers"},
            "f": {"type": "string", "pattern": "^(powerlaw|table):.+$"},
            "xmax": {"type": "number", "minimum": 1},
            "m0": {"type": "number", "exclusiveMinimum": 1},
            "epsilon": {"type": "number", "minimum": 0},
            "out": {"type": "string"},
        },
    }

    def check(self) -> None:
        return None


@dataclass(slots=True, frozen=True)
class VerifySpec:
    """Scales of the verification suite; defaults are sized for a desktop run."""

    suite: str = "all"
    seed: int = 0
    exhaustive_length: int = 12
    exhaustive_depths: tuple[int, ...] = (1, 2, 3, 4)
    random_paths: int = 1000
    random_length: int = 1000
    inequality_paths: int = 10_000
    inequality_depths: tuple[int, ...] = (2, 4, 8)
    reflection_n_max: int = 16
    reflection_depths: tuple[int, ...] = (1, 2, 3)
    reflection_levels: tuple[int, ...] = (1, 2)
    mc_n: int = 1 << 20
    mc_k: int = 16
    mc_trials: int = 200
    concentration_trials: int = 2000
    tkn_tolerance: float = 0.1
    band_depths: tuple[int, ...] = (4, 16, 64)
    truncation_cap: int = 8
    local_time_n: int = 1_000_000
    local_time_trials: int = 2000
    small_ball_ns: tuple[int, ...] = (1 << 12, 1 << 16, 1 << 20)
    small_ball_trials: int = 2000
    d2: float = 0.25
    bootstrap: int = 1000
    threads: int | None = None
    out: str = "report.json"

    kind = "verify"
    schema = {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "kind": {"const": "verify"},
            "suite": {"enum": ["exact", "mc", "all"]},
            "seed": _SEED,
            "exhaustive_length": {"type": "integer", "minimum": 0, "maximum": 20},
            "exhaustive_depths": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "random_paths": {"type": "integer", "minimum": 0},
            "random_length": {"type": "integer", "minimum": 0},
            "inequality_paths": {"type": "integer", "minimum": 0},
            "inequality_depths": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            "reflection_n_max": {"type": "integer", "minimum": 0, "maximum": 20},
            "reflection_depths": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "reflection_levels": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "mc_n": {"type": "integer", "minimum": 16},
            "mc_k": {"type": "integer", "minimum": 1},
            "mc_trials": {"type": "integer", "minimum": 2},
            "concentration_trials": {"type": "integer", "minimum": 2},
            "tkn_tolerance": {"type": "number", "exclusiveMinimum": 0},
            "band_depths": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "truncation_cap": {"type": "integer", "minimum": 0},
            "local_time_n": {"type": "integer", "minimum": 10_000},
            "local_time_trials": {"type": "integer", "minimum": 2},
            "small_ball_ns": {"type": "array", "items": {"type": "integer", "minimum": 16}},
            "small_ball_trials": {"type": "integer", "minimum": 2},
            "d2": {"type": "number", "exclusiveMinimum": 0},
            "bootstrap": {"type": "integer", "minimum": 10},
            "threads": _THREADS,
            "out": {"type": "string"},
        },
    }

    def check(self) -> None:
        return None


ConfigDocument = SimulateSpec | ExperimentConfig | LayerBuildSpec | VerifySpec
KINDS: dict[str, type[ConfigDocument]] = {
    SimulateSpec.kind: SimulateSpec,
    ExperimentConfig.kind: ExperimentConfig,
    LayerBuildSpec.kind: LayerBuildSpec,
    VerifySpec.kind: VerifySpec,
}


def _pointer(error) -> str:
    parts = [str(part) for part in error.absolute_path]
    if error.validator == "additionalProperties" and isinstance(error.instance, dict):
        known = set(error.schema.get("properties", {}))
        extra = sorted(set(error.instance) - known)
        if extra:
            parts.append(extra[0])
    return "/" + "/".join(parts) if parts else ""


def from_mapping(payload: Any, kind: str) -> ConfigDocument:
    """Validate a decoded JSON document and apply defaults."""
    try:
        cls = KINDS[kind]
    except KeyError:
        raise ConfigError("", f"unknown configuration kind {kind!r}") from None
    if isinstance(payload, dict) and payload.get("kind", kind) != kind:
        raise ConfigError("/kind", f"document is a {payload['kind']!r} config, expected {kind!r}")
    errors = sorted(
        Draft202012Validator(cls.schema).iter_errors(payload),
        key=lambda error: list(map(str, error.absolute_path)),
    )
    if errors:
        raise ConfigError(_pointer(errors[0]), errors[0].message)

    values = {key: value for key, value in payload.items() if key != "kind"}
    for item in fields(cls):
        if isinstance(item.default, tuple) and item.name in values:
            values[item.name] = tuple(values[item.name])
    document = cls(**values)
    document.check()
    return document


def read_payload(path: Path | str) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError("", f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{path} is not valid JSON: {exc}") from exc


def parse_config(path: Path | str, kind: str) -> ConfigDocument:
    return from_mapping(read_payload(path), kind)


def to_dict(document: ConfigDocument) -> dict[str, Any]:
    """The fully resolved document, tagged with its kind; tuples become lists."""
    values = {
        key: list(value) if isinstance(value, tuple) else value
        for key, value in asdict(document).items()
    }
    return {"kind": document.kind, **values}


def with_overrides(payload: Any, kind: str, **overrides: Any) -> ConfigDocument:
    """Merge CLI values into a raw document, then validate.

    ``None`` keeps the document's value; keys the kind does not define are skipped.
    """
    if payload is None:
        payload = {}
    if not isinstance(payload, dict):
        return from_mapping(payload, kind)
    known = {item.name for item in fields(KINDS[kind])} if kind in KINDS else set()
    merged = dict(payload)
    for key, value in overrides.items():
        if value is not None and key in known:
            merged[key] = list(value) if isinstance(value, tuple) else value
    return from_mapping(merged, kind)
