"""Choreographic programming: projection, interpreters, runtime and checker."""

from ._chorc import (
    ChorSyntaxError,
    check,
    execute,
    merge,
    more_branches,
    project,
    run,
    simulate,
    verify,
)

__all__ = [
    "ChorSyntaxError",
    "check",
    "execute",
    "merge",
    "more_branches",
    "project",
    "run",
    "simulate",
    "verify",
]
