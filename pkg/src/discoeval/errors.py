"""Shared exception types."""


class DiscoEvalError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DiscoEvalError):
    """Malformed serialized tree.  Carries the byte offset of the problem."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class DataError(DiscoEvalError):
    """Malformed or inconsistent tabular input (scores, rankings, weights)."""


class NoValueError(DiscoEvalError):
    """A statistic is undefined for the given input (e.g. constant vector,
    zero evaluable pairs)."""
