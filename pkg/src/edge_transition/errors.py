"""Exceptions raised by the derivation and verification pipelines.

Every class carries the exit code the command line reports for it.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, ClassVar

if TYPE_CHECKING:
    from edge_transition.algebra.poly import BivarPoly


class EdgeTransitionError(Exception):
    """Base class of every error raised by the package."""

    exit_code: ClassVar[int] = 1


class TheoryViolationError(EdgeTransitionError):
    """A mathematical invariant of the expansion did not hold."""

    exit_code: ClassVar[int] = 2

    def __init__(
        self, message: str, *, j: int | None = None, component: str | None = None
    ):
        """Theory violation.

        Args:
            message: description of the failed check
            j: expansion order at which the check failed, if any
            component: basis label such as "01", if any
        """
        super().__init__(message)
        self.j = j
        self.component = component

    def __str__(self) -> str:
        """Message with the offending entry appended."""
        where = []
        if self.j is not None:
            where.append(f"j={self.j}")
        if self.component is not None:
            where.append(f"component={self.component}")
        base = super().__str__()
        return f"{base} ({', '.join(where)})" if where else base


class FieldExtensionError(TheoryViolationError):
    """A value left Q(i, sqrt2) or a symbolic power did not cancel."""


class DivisionRemainderError(TheoryViolationError):
    """Exact division by (x - y) left a remainder."""

    def __init__(
        self,
        remainder: BivarPoly,
        *,
        j: int | None = None,
        component: str | None = None,
    ):
        """Division remainder.

        Args:
            remainder: p(y, y) as a polynomial in y
            j: expansion order, if known
            component: basis label, if known
        """
        super().__init__(
            f"polynomial not divisible by (x - y), remainder {remainder}",
            j=j,
            component=component,
        )
        self.remainder = remainder


class NonFiniteValueError(TheoryViolationError):
    """A kernel evaluation produced a non-finite value."""


class PrecisionExhaustedError(EdgeTransitionError):
    """The working precision cannot deliver the requested accuracy."""

    exit_code: ClassVar[int] = 3

    def __init__(self, message: str, *, suggested_bits: int | None = None):
        """Precision exhausted.

        Args:
            message: what could not be resolved
            suggested_bits: a working precision that should suffice
        """
        if suggested_bits is not None:
            message = f"{message}; retry with at least {suggested_bits} bits"
        super().__init__(message)
        self.suggested_bits = suggested_bits


class ConvergenceError(EdgeTransitionError):
    """An iterative method did not converge."""

    exit_code: ClassVar[int] = 3


class ParameterError(EdgeTransitionError, ValueError):
    """Arguments outside the supported domain."""

    exit_code: ClassVar[int] = 4


class VariableMismatchError(ParameterError):
    """Series in different formal variables were combined."""
