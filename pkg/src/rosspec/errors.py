"""Exception hierarchy shared across the package.

Every error carries an optional machine-readable payload so the CLI can
emit a structured diagnostic without re-deriving context.
"""
from __future__ import annotations


class RosspecError(Exception):
    """Base class for all package errors."""

    exit_code = 1

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.message = message
        self.payload = payload or {}


class ValidationError(RosspecError, ValueError):
    """Bad user input: unknown space, malformed domain, out-of-range argument."""

    exit_code = 2


class InvalidSpaceError(ValidationError):
    """Division algebra / dimension combination that does not name a space."""


class DomainError(ValidationError):
    """Radii that do not describe a ball or annulus."""


class NumericalError(RosspecError):
    """A solver failed to converge or an integral could not be evaluated."""

    exit_code = 3


class ConvergenceError(NumericalError):
    """Eigenvalue or root search exhausted its iteration budget."""


class ConsistencyError(RosspecError):
    """A structural property the solvers rely on failed numerically.

    Raised e.g. when the first nonradial eigenvalue does not sit below the
    second radial one, which every downstream identification assumes.
    """

    exit_code = 4


class CounterexampleError(RosspecError):
    """A comparison run produced a row violating the sharp inequality."""

    exit_code = 4
