"""Exception hierarchy shared by every excursionlab module."""

from __future__ import annotations


class ExcursionLabError(Exception):
    """Base class for all errors raised by excursionlab."""


class ParameterError(ExcursionLabError, ValueError):
    """A parameter violates an operation's precondition."""


class HorizonError(ExcursionLabError, IndexError):
    """A time, layer index or scale lies beyond what the inputs cover."""


class SpeedFunctionError(ParameterError):
    """A speed function fails its admissibility checks."""


class ConfigError(ExcursionLabError):
    """A configuration document is malformed; `pointer` locates the offending value."""

    def __init__(self, pointer: str, message: str) -> None:
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.detail = message
