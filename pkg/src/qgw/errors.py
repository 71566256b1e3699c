"""Exception hierarchy shared by all modules.

Each class maps to one CLI exit code: input problems exit 1, semantic
failures (invalid graph, rejected witness) exit 2, and internal numerical
inconsistencies exit 3.
"""

from __future__ import annotations

__all__ = [
    "QGWError",
    "InputError",
    "SingularityError",
    "BudgetError",
    "ValidationError",
    "StateError",
    "ClassificationError",
    "InconsistencyError",
]


class QGWError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class InputError(QGWError, ValueError):
    """Malformed or out-of-domain input (shapes, non-finite entries, ...)."""

    exit_code = 1


class SingularityError(InputError):
    """A matrix that must be positive definite has a small eigenvalue."""


class BudgetError(InputError):
    """An exhaustive search was requested beyond its size budget."""


class ValidationError(QGWError):
    """The object is well formed but is not a quantum graph.

    Parameters
    ----------
    message : str
        Human readable summary.
    report : object, optional
        Structured details, e.g. a validation report or residual norms.
    """

    exit_code = 2

    def __init__(self, message: str, report: object = None) -> None:
        super().__init__(message)
        self.report = report


class StateError(QGWError):
    """An operation's precondition on the graph state does not hold."""

    exit_code = 2


class ClassificationError(QGWError):
    """A 2x2 block fits none of the strange-graph edge shapes."""

    exit_code = 2

    def __init__(self, message: str, pair: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.pair = pair


class InconsistencyError(QGWError, RuntimeError):
    """Two computations that must agree did not (a convention bug)."""

    exit_code = 3
