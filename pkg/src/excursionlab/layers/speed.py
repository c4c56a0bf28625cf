"""Target speed functions f and their hypothesis checks."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

from excursionlab.errors import ParameterError, SpeedFunctionError
from excursionlab.models import SpeedReport, Violation

UNIT_TOLERANCE = 1e-9
MONOTONE_TOLERANCE = 1e-12


class SpeedFunction(Protocol):
    """A speed function on [1, inf), evaluated in log-log coordinates."""

    epsilon: float

    @property
    def name(self) -> str: ...

    def log_value(self, log_x): ...


@dataclass(slots=True, frozen=True)
class PowerLaw:
    alpha: float
    epsilon: float = 0.0

    @property
    def name(self) -> str:
        return f"powerlaw:{self.alpha:g}"

    def log_value(self, log_x):
        return self.alpha * log_x

    def __call__(self, x: float) -> float:
        return math.exp(self.log_value(math.log(x)))


@dataclass(slots=True, frozen=True)
class LogLogTable:
    """f given by (x, f(x)) knots, piecewise linear in log-log, extended linearly past the ends."""

    log_x: tuple[float, ...]
    log_f: tuple[float, ...]
    epsilon: float = 0.0
    label: str = "table"

    def __post_init__(self) -> None:
        if len(self.log_x) < 2 or len(self.log_x) != len(self.log_f):
            raise SpeedFunctionError("A speed table needs at least two (x, f) rows")
        if any(b <= a for a, b in zip(self.log_x, self.log_x[1:])):
            raise SpeedFunctionError("Speed table x values must be strictly increasing")

    @classmethod
    def from_csv(cls, path: Path | str, *, epsilon: float = 0.0) -> LogLogTable:
        path = Path(path)
        if not path.exists():
            raise SpeedFunctionError(f"Speed table not found: {path}")
        with path.open(newline="", encoding="utf-8") as handle:
            rows = [row for row in csv.reader(handle) if row and not row[0].startswith("#")]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
        try:
            knots = sorted((float(x), float(f)) for x, f, *_ in rows)
        except ValueError as exc:
            raise SpeedFunctionError(f"Malformed speed table {path}: {exc}") from exc
        if any(x <= 0 or f <= 0 for x, f in knots):
            raise SpeedFunctionError(f"Speed table {path} must contain positive values")
        return cls(
            log_x=tuple(math.log(x) for x, _ in knots),
            log_f=tuple(math.log(f) for _, f in knots),
            epsilon=epsilon,
            label=f"table:{path}",
        )

    @property
    def name(self) -> str:
        return self.label

    def log_value(self, log_x):
        xs = np.asarray(self.log_x)
        fs = np.asarray(self.log_f)
        lx = np.asarray(log_x, dtype=float)
        low_slope = (fs[1] - fs[0]) / (xs[1] - xs[0])
        high_slope = (fs[-1] - fs[-2]) / (xs[-1] - xs[-2])
        out = np.interp(lx, xs, fs)
        out = np.where(lx > xs[-1], fs[-1] + high_slope * (lx - xs[-1]), out)
        out = np.where(lx < xs[0], fs[0] + low_slope * (lx - xs[0]), out)
        return out if out.ndim else float(out)

    def __call__(self, x: float) -> float:
        return math.exp(self.log_value(math.log(x)))


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def parse_speed_spec(
    text: str, *, epsilon: float = 0.0, base_dir: Path | None = None
) -> SpeedFunction:
    """Parse ``powerlaw:ALPHA`` or ``table:PATH``."""
    kind, sep, argument = text.partition(":")
    if not sep or not argument:
        raise SpeedFunctionError(
            f"Speed spec must look like 'powerlaw:0.75' or 'table:path', got {text!r}"
        )
    if kind == "powerlaw":
        try:
            alpha = float(argument)
        except ValueError as exc:
            raise SpeedFunctionError(f"Invalid power-law exponent {argument!r}") from exc
        return PowerLaw(alpha=alpha, epsilon=epsilon)
    if kind == "table":
        path = Path(argument)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return LogLogTable.from_csv(path, epsilon=epsilon)
    raise SpeedFunctionError(f"Unknown speed function family {kind!r}")


@dataclass(slots=True, frozen=True)
class GeometricGrid:
    x_max: float
    points: int = 200
    x_min: float = 1.0

    def __post_init__(self) -> None:
        if self.x_min < 1 or self.x_max < self.x_min:
            raise ParameterError(
                f"Grid must satisfy 1 <= x_min <= x_max, got [{self.x_min}, {self.x_max}]"
            )
        if self.points < 1:
            raise ParameterError("Grid needs at least one point")

    def log_points(self) -> np.ndarray:
        return np.linspace(math.log(self.x_min), math.log(self.x_max), self.points)

    def values(self) -> np.ndarray:
        return np.exp(self.log_points())


def _nondecreasing(check: str, lx: np.ndarray, seq: np.ndarray) -> list[Violation]:
    slack = MONOTONE_TOLERANCE * np.maximum(1.0, np.abs(seq[:-1]))
    bad = np.flatnonzero(np.diff(seq) < -slack)
    return [Violation(check, math.exp(lx[i]), math.exp(lx[i + 1])) for i in bad]


def validate_speed(f: SpeedFunction, grid: GeometricGrid) -> SpeedReport:
    """Check f(1) = 1 and the monotonicity hypotheses on ``grid``."""
    at_one = math.exp(f.log_value(0.0))
    if abs(at_one - 1.0) > UNIT_TOLERANCE:
        raise SpeedFunctionError(f"{f.name}: f(1) = {at_one!r}, expected 1")

    lx = grid.log_points()
    lf = np.asarray(f.log_value(lx), dtype=float)
    checks = ["x/f nondecreasing", "f/sqrt(x) nondecreasing"]
    violations = _nondecreasing(checks[0], lx, lx - lf)
    violations += _nondecreasing(checks[1], lx, lf - lx / 2)
    if f.epsilon > 0:
        check = "f/(sqrt(x) loglog(x)^(1+eps)) nondecreasing"
        checks.append(check)
        tail = lx >= math.e
        if np.count_nonzero(tail) > 1:
            seq = lf[tail] - lx[tail] / 2 - (1 + f.epsilon) * np.log(np.log(lx[tail]))
            violations += _nondecreasing(check, lx[tail], seq)
    return SpeedReport(source=f.name, checks=tuple(checks), violations=tuple(violations))


def loglog(n: float) -> float:
    """ln ln n, defined for n >= 16."""
    if n < 16:
        raise ParameterError(f"log log n needs n >= 16, got {n}")
    return math.log(math.log(n))


def scaling_from_f(f: SpeedFunction, n: float, mode: str) -> float:
    """log log n * f(n / log log n) for ``limsup``; f(n log log n) / log log n for ``liminf``."""
    ll = loglog(n)
    if mode == "limsup":
        return ll * math.exp(f.log_value(math.log(n / ll)))
    if mode == "liminf":
        return math.exp(f.log_value(math.log(n * ll))) / ll
    raise ParameterError(f"mode must be 'limsup' or 'liminf', got {mode!r}")
