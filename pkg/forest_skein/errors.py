"""
Errors
------
Exception types raised across the library. The CLI maps them to exit codes
(ParseError and InputFileError -> 2, DomainError -> 3) and the API maps
ParseError and DomainError to HTTP 400.
"""

from __future__ import annotations


class FsgError(Exception):
    """Base class for every library error."""


class ParseError(FsgError, ValueError):
    """Malformed term, element or point syntax.

    `position` is the 0-based offset into the (whitespace-stripped) input where
    parsing stopped, or None when the location is not meaningful.
    """

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class DomainError(FsgError, ValueError):
    """Well-formed input that violates an operation's precondition
    (arity mismatch, wrong type tag, index out of range, n < 3, ...)."""


class SkeinError(FsgError, RuntimeError):
    """A rewriting step failed: no pattern at a flip site, a trace that does
    not replay, or an exhausted move budget."""


class TransducerError(FsgError, ValueError):
    """Malformed or stalling transducer."""


class InputFileError(FsgError, OSError):
    """An input file that cannot be read."""
