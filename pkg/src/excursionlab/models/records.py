"""Checkpoint records and band summaries of LIL experiments."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

RECORD_COLUMNS = (
    "trial",
    "m",
    "n",
    "range",
    "s0",
    "s0p",
    "s1",
    "s2",
    "s3",
    "s3t",
    "D_up",
    "D_lo",
    "g",
    "h",
    "fs_limsup",
    "fs_liminf",
    "r_up_g",
    "r_lo_h",
    "tag",
)


class RangeTag(str, Enum):
    HIGH = "range-high"
    LOW = "range-low"
    NEUTRAL = "neutral"


@dataclass(slots=True, frozen=True)
class LilRecord:
    """One checkpoint t_m of one trial."""

    trial: int
    m: int
    n: int
    range: int
    s0: int
    s0p: int
    s1: int
    s2: int
    s3: int
    s3t: int
    D_up: float
    D_lo: float
    g: float
    h: float
    fs_limsup: float
    fs_liminf: float
    tag: RangeTag = RangeTag.NEUTRAL

    @property
    def r_up_g(self) -> float:
        return self.D_up / self.g

    @property
    def r_lo_h(self) -> float:
        return self.D_lo / self.h

    @property
    def r_fs_limsup_g(self) -> float:
        return self.fs_limsup / self.g

    @property
    def r_fs_liminf_h(self) -> float:
        return self.fs_liminf / self.h

    def to_row(self) -> list[Any]:
        values = asdict(self)
        values["r_up_g"] = self.r_up_g
        values["r_lo_h"] = self.r_lo_h
        values["tag"] = self.tag.value
        return [values[column] for column in RECORD_COLUMNS]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> LilRecord:
        ints = ("trial", "m", "n", "range", "s0", "s0p", "s1", "s2", "s3", "s3t")
        floats = ("D_up", "D_lo", "g", "h", "fs_limsup", "fs_liminf")
        return cls(
            **{name: int(row[name]) for name in ints},
            **{name: float(row[name]) for name in floats},
            tag=RangeTag(row["tag"]),
        )


@dataclass(slots=True, frozen=True)
class RatioBand:
    """Running extrema of one ratio across trials, indexed by checkpoint m >= burn-in."""

    name: str
    ms: tuple[int, ...]
    running_sup: tuple[float, ...]
    running_inf: tuple[float, ...]

    @property
    def sup(self) -> float:
        return self.running_sup[-1]

    @property
    def inf(self) -> float:
        return self.running_inf[-1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "m": list(self.ms),
            "running_sup": list(self.running_sup),
            "running_inf": list(self.running_inf),
            "sup": self.sup,
            "inf": self.inf,
        }


@dataclass(slots=True, frozen=True)
class FlatnessCheck:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(slots=True, frozen=True)
class BandSummary:
    burnin: int
    records: int
    bands: tuple[RatioBand, ...]
    checks: tuple[FlatnessCheck, ...] = ()
    tag_frequencies: tuple[tuple[str, float], ...] = ()

    def band(self, name: str) -> RatioBand:
        for band in self.bands:
            if band.name == name:
                return band
        raise KeyError(f"No band named {name!r}")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "burnin": self.burnin,
            "records": self.records,
            "bands": [band.to_dict() for band in self.bands],
            "checks": [check.to_dict() for check in self.checks],
            "tag_frequencies": dict(self.tag_frequencies),
            "passed": self.passed,
        }
