"""Shared exception types."""

from __future__ import annotations

__all__ = ["GuardError"]


class GuardError(ValueError):
    """A size/feasibility guard was violated.

    Carries the guard's name and its stated limit so front ends can report
    exactly which cap was hit.
    """

    def __init__(self, guard: str, limit: str, actual: object):
        self.guard = guard
        self.limit = limit
        self.actual = actual
        super().__init__(f"guard '{guard}' violated: limit {limit}, got {actual}")
