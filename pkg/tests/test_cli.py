from __future__ import annotations

import csv
import json

import pytest
from click.testing import CliRunner

from excursionlab import __version__
from excursionlab.cli import main
from excursionlab.errors import HorizonError


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _simulate(runner: CliRunner, out_dir, *extra: str):
    return runner.invoke(
        main,
        [
            "--seed", "3", "--out-dir", str(out_dir),
            "simulate", "--n", "500", "--trials", "2", "-k", "2", "-k", "4", *extra,
        ],
    )


def test_version(runner: CliRunner) -> None:
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_build_layers_writes_dyadic_sequence(runner: CliRunner, tmp_path) -> None:
    result = runner.invoke(
        main,
        ["--out-dir", str(tmp_path), "build-layers", "--f", "powerlaw:0.75", "--xmax", "1e6"],
    )
    assert result.exit_code == 0, result.output
    layers = json.loads((tmp_path / "layers.json").read_text(encoding="utf-8"))
    assert layers["k"] == [1, 2, 4, 8, 16, 32]
    assert layers["l"] == layers["k"]
    assert (tmp_path / "build-layers.manifest.json").exists()


def test_simulate_outputs(runner: CliRunner, tmp_path) -> None:
    result = _simulate(runner, tmp_path)
    assert result.exit_code == 0, result.output
    with (tmp_path / "walks.csv").open(encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert [row["trial"] for row in rows] == ["0", "1"]
    assert all(row["n"] == "500" for row in rows)
    header = (tmp_path / "tallies.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "k,n,x,count"
    aggregates = json.loads((tmp_path / "aggregates.json").read_text(encoding="utf-8"))
    assert aggregates["completion"] == "return"
    assert [(r["trial"], r["k"]) for r in aggregates["records"]] == [
        (0, 2), (0, 4), (1, 2), (1, 4)
    ]
    manifest = json.loads((tmp_path / "simulate.manifest.json").read_text(encoding="utf-8"))
    assert manifest["master_seed"] == 3
    assert len(manifest["task_seeds"]["simulate"]) == 2
    assert set(manifest["outputs"]) == {"walks.csv", "tallies.csv", "aggregates.json"}


def test_same_seed_same_bytes(runner: CliRunner, tmp_path) -> None:
    _simulate(runner, tmp_path / "a")
    _simulate(runner, tmp_path / "b")
    for name in ("walks.csv", "tallies.csv", "aggregates.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_replay_reproduces_outputs(runner: CliRunner, tmp_path) -> None:
    assert _simulate(runner, tmp_path).exit_code == 0
    result = runner.invoke(main, ["replay", str(tmp_path / "simulate.manifest.json")])
    assert result.exit_code == 0, result.output
    assert "replayed simulate: 3 outputs match" in result.output


def test_replay_reports_digest_mismatch(runner: CliRunner, tmp_path) -> None:
    assert _simulate(runner, tmp_path).exit_code == 0
    path = tmp_path / "simulate.manifest.json"
    manifest = json.loads(path.read_text(encoding="utf-8"))
    manifest["outputs"]["walks.csv"] = "0" * 64
    path.write_text(json.dumps(manifest), encoding="utf-8")
    result = runner.invoke(main, ["replay", str(path)])
    assert result.exit_code == 1
    assert "walks.csv: expected" in result.output


def test_lil_needs_speed_or_layers(runner: CliRunner, tmp_path) -> None:
    result = runner.invoke(main, ["--out-dir", str(tmp_path), "lil", "--n-max", "64"])
    assert result.exit_code == 2


def test_lil_rejects_zero_trials(runner: CliRunner, tmp_path) -> None:
    result = runner.invoke(
        main,
        [
            "--out-dir", str(tmp_path),
            "lil", "--f", "powerlaw:0.75", "--n-max", "64", "--trials", "0",
        ],
    )
    assert result.exit_code == 2
    assert "/trials" in result.output


def test_lil_inadmissible_speed_is_a_runtime_error(runner: CliRunner, tmp_path) -> None:
    result = runner.invoke(
        main, ["--out-dir", str(tmp_path), "lil", "--f", "powerlaw:0.3", "--n-max", "64"]
    )
    assert result.exit_code == 3


def test_lil_run(runner: CliRunner, tmp_path) -> None:
    result = runner.invoke(
        main,
        [
            "--seed", "1", "--out-dir", str(tmp_path),
            "lil", "--f", "powerlaw:0.75", "--n-max", "1024", "--trials", "2",
        ],
    )
    assert result.exit_code in (0, 1), result.output
    summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
    assert summary["passed"] is (result.exit_code == 0)
    assert "shape_constants" in summary
    assert summary["layers"]["source"] == "powerlaw:0.75"
    assert (tmp_path / "records.csv").read_text(encoding="utf-8").startswith("trial,m,n,")


def test_verify_exact_suite_from_config(runner: CliRunner, tmp_path) -> None:
    config = tmp_path / "verify.json"
    config.write_text(
        json.dumps(
            {
                "kind": "verify",
                "exhaustive_length": 6,
                "random_paths": 3,
                "random_length": 64,
                "inequality_paths": 3,
                "reflection_n_max": 8,
            }
        ),
        encoding="utf-8",
    )
    out_dir = tmp_path / "out"
    result = runner.invoke(
        main, ["--config", str(config), "--out-dir", str(out_dir), "verify", "--suite", "exact"]
    )
    assert result.exit_code == 0, result.output
    report = json.loads((out_dir / "report.json").read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert report["suite"] == "exact"


def test_library_errors_exit_with_runtime_status(runner: CliRunner, tmp_path, mocker) -> None:
    failing = mocker.patch(
        "excursionlab.cli.run_command", side_effect=HorizonError("layers end before n_max")
    )
    result = runner.invoke(main, ["--out-dir", str(tmp_path), "verify", "--suite", "exact"])
    assert result.exit_code == 3
    assert "layers end before n_max" in result.output
    failing.assert_called_once()
    assert not (tmp_path / "verify.manifest.json").exists()


def test_unexpected_errors_exit_with_runtime_status(runner: CliRunner, tmp_path, mocker) -> None:
    mocker.patch("excursionlab.cli.run_command", side_effect=OSError("disk full"))
    result = runner.invoke(main, ["--out-dir", str(tmp_path), "verify", "--suite", "exact"])
    assert result.exit_code == 3
    assert "OSError: disk full" in result.output
    assert not isinstance(result.exception, OSError)
