# errors.py
from typing import Any


class HnlatError(Exception):
    """Base class for hnlat failures; carries the CLI exit code."""

    exit_code = 1


class InputError(HnlatError):
    """Malformed input or a violated operation precondition."""

    exit_code = 2


class OracleRefusal(InputError):
    """The brute-force oracle declined a problem above its size threshold."""


class InvariantViolation(HnlatError):
    """A mathematical invariant failed to hold. Always an implementation bug."""

    exit_code = 3


class EnumerationIncomplete(HnlatError):
    """The node cap was reached before an enumeration finished.

    `partial` holds whatever was found before the search stopped.
    """

    exit_code = 0

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial
