"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "ClusterdiamError",
    "ValidationError",
    "ParseError",
    "SizeLimitError",
    "ConsistencyError",
    "CacheError",
]


class ClusterdiamError(Exception):
    """Base class for package errors."""


class ValidationError(ClusterdiamError, ValueError):
    """Invalid argument, graph, or configuration."""


class ParseError(ClusterdiamError, ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(ValidationError):
    """An input exceeds a configured size limit (e.g. quotient too large)."""


class ConsistencyError(ClusterdiamError, RuntimeError):
    """Internal invariant violated; indicates a bug, not bad input."""


class CacheError(ClusterdiamError, OSError):
    """Binary graph cache is unreadable or fails its checksum."""
