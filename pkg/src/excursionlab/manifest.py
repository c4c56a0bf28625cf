"""Run manifests: what was run, with which seeds, and digests of what it wrote."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from excursionlab import __version__
from excursionlab.errors import ConfigError

MANIFEST_SUFFIX = ".manifest.json"


def now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def file_digest(path: Path | str) -> str:
    with Path(path).open("rb") as handle:
        return hashlib.file_digest(handle, "sha256").hexdigest()


@dataclass(slots=True)
class RunManifest:
    command: str
    config: dict[str, Any]
    master_seed: int
    task_seeds: dict[str, list[int]] = field(default_factory=dict)
    tool_version: str = __version__
    started_at: str = field(default_factory=now)
    finished_at: str | None = None
    outputs: dict[str, str] = field(default_factory=dict)

    def record_output(self, path: Path | str) -> None:
        """Digest ``path`` after it has been written; keyed by file name."""
        path = Path(path)
        self.outputs[path.name] = file_digest(path)

    def finish(self) -> None:
        self.finished_at = now()

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> RunManifest:
        try:
            return cls(**payload)
        except TypeError as exc:
            raise ConfigError("", f"malformed manifest: {exc}") from exc


def manifest_path(out_dir: Path | str, command: str) -> Path:
    return Path(out_dir) / f"{command}{MANIFEST_SUFFIX}"


def write_manifest(path: Path | str, manifest: RunManifest) -> Path:
    path = Path(path)
    path.write_text(json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")
    return path


def read_manifest(path: Path | str) -> RunManifest:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError("", f"manifest not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError("", f"{path} does not hold a manifest object")
    return RunManifest.from_dict(payload)


def digest_mismatches(expected: RunManifest, actual: RunManifest) -> dict[str, tuple[str, str]]:
    """Outputs whose digests differ between two runs, as name -> (expected, actual)."""
    names = sorted(set(expected.outputs) | set(actual.outputs))
    return {
        name: (expected.outputs.get(name, ""), actual.outputs.get(name, ""))
        for name in names
        if expected.outputs.get(name) != actual.outputs.get(name)
    }
