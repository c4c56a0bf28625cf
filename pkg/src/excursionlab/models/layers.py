"""Parameter sequences of the diagonal product and derived indices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from excursionlab.errors import ParameterError

INF_TOKEN = "inf"

# a positive integer, or math.inf
Depth = int | float


def is_infinite(value: Depth) -> bool:
    return isinstance(value, float) and math.isinf(value)


def _decode(value: Any) -> Depth:
    if value == INF_TOKEN or (isinstance(value, float) and math.isinf(value)):
        return math.inf
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParameterError(f"Layer parameters must be positive integers or 'inf', got {value!r}")
    return value


def _encode(value: Depth) -> int | str:
    return INF_TOKEN if is_infinite(value) else int(value)


def loglog_threshold(k: tuple[Depth, ...], l: tuple[Depth, ...]) -> int:
    """Smallest index from which log log k_s <= l_s holds for every later layer."""
    start = 0
    for s, (k_s, l_s) in enumerate(zip(k, l)):
        if is_infinite(k_s) or is_infinite(l_s) or k_s <= math.e:
            continue
        if math.log(math.log(k_s)) > l_s:
            start = s + 1
    return start


@dataclass(slots=True, frozen=True)
class LayerParams:
    """The sequences (k_s, l_s); the final entry of one of them may be infinite."""

    m0: float
    k: tuple[Depth, ...]
    l: tuple[Depth, ...]
    source: str = ""
    tail: str | None = None
    loglog_from: int = field(default=0)

    def __post_init__(self) -> None:
        if self.m0 <= 1:
            raise ParameterError(f"m0 must exceed 1, got {self.m0}")
        if not self.k or len(self.k) != len(self.l):
            raise ParameterError("k and l must be nonempty and of equal length")
        if self.k[0] != 1 or self.l[0] != 1:
            raise ParameterError("Layer 0 must have k_0 = l_0 = 1")
        infinite = [
            s for s in range(len(self.k)) if is_infinite(self.k[s]) or is_infinite(self.l[s])
        ]
        if infinite and infinite != [len(self.k) - 1]:
            raise ParameterError("Only the last layer may carry an infinite parameter")
        if infinite and is_infinite(self.k[-1]) and is_infinite(self.l[-1]):
            raise ParameterError("At most one of the sequences may terminate in infinity")
        factor = Fraction(self.m0)
        for seq_name, seq in (("k", self.k), ("l", self.l)):
            for s in range(len(seq) - 1):
                nxt = seq[s + 1]
                if not is_infinite(nxt) and Fraction(nxt) < factor * seq[s]:
                    raise ParameterError(
                        f"{seq_name}_{s + 1} = {nxt} is below m0 * {seq_name}_{s}"
                        f" = {self.m0} * {seq[s]}"
                    )

    @classmethod
    def from_sequences(
        cls,
        k: list[Any] | tuple[Any, ...],
        l: list[Any] | tuple[Any, ...],
        *,
        m0: float = 2.0,
        source: str = "",
        tail: str | None = None,
    ) -> LayerParams:
        k_seq = tuple(_decode(value) for value in k)
        l_seq = tuple(_decode(value) for value in l)
        return cls(
            m0=float(m0),
            k=k_seq,
            l=l_seq,
            source=source,
            tail=tail,
            loglog_from=loglog_threshold(k_seq, l_seq),
        )

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> LayerParams:
        return cls.from_sequences(
            payload["k"],
            payload["l"],
            m0=payload.get("m0", 2.0),
            source=payload.get("source", ""),
            tail=payload.get("tail"),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "m0": self.m0,
            "k": [_encode(value) for value in self.k],
            "l": [_encode(value) for value in self.l],
            "source": self.source,
            "tail": self.tail,
            "loglog_from": self.loglog_from,
        }

    def __len__(self) -> int:
        return len(self.k)

    @property
    def last(self) -> int:
        return len(self.k) - 1

    @property
    def terminated(self) -> bool:
        """True when the final entry of either sequence is infinite."""
        return is_infinite(self.k[-1]) or is_infinite(self.l[-1])

    def product(self, s: int) -> Depth:
        return self.k[s] * self.l[s]


@dataclass(slots=True, frozen=True)
class CriticalLayers:
    """Critical layer indices at time n; ``s0`` is None unless a range was supplied."""

    n: int
    r: float
    s0: int | None
    s0_prime: int
    s1: int
    s2: int
    s3: int
    s3_tilde: int

    def as_dict(self) -> dict[str, int | None]:
        return {
            "s0": self.s0,
            "s0p": self.s0_prime,
            "s1": self.s1,
            "s2": self.s2,
            "s3": self.s3,
            "s3t": self.s3_tilde,
        }


@dataclass(slots=True, frozen=True)
class Violation:
    check: str
    x_from: float
    x_to: float


@dataclass(slots=True, frozen=True)
class SpeedReport:
    """Result of checking a speed function's monotonicity hypotheses on a grid."""

    source: str
    checks: tuple[str, ...]
    violations: tuple[Violation, ...]

    @property
    def accepted(self) -> bool:
        return not self.violations

    def failed_checks(self) -> set[str]:
        return {violation.check for violation in self.violations}
