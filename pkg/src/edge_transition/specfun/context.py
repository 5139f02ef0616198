"""Working precision and accuracy target shared by the numerical modules."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any

import mpmath

from edge_transition.errors import ParameterError, PrecisionExhaustedError

logger = logging.getLogger(__name__)

MIN_PRECISION_BITS = 64
DEFAULT_PRECISION_BITS = 256
DEFAULT_PRECISION_CAP = 20000


@dataclass(frozen=True)
class EvalContext:
    """Precision of one evaluation.

    Attributes:
        precision_bits: mantissa bits of the returned values, at least 64
        target_bits: requested absolute error 2**-target_bits;
            defaults to precision_bits - 32
        max_precision_bits: cap on automatic precision escalation
    """

    precision_bits: int = DEFAULT_PRECISION_BITS
    target_bits: int | None = None
    max_precision_bits: int = DEFAULT_PRECISION_CAP

    def __post_init__(self) -> None:
        """Validate the bit counts and fill in the default target."""
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ParameterError(f"precision_bits must be >= {MIN_PRECISION_BITS}, got {self.precision_bits}")
        if self.max_precision_bits < self.precision_bits:
            raise ParameterError("max_precision_bits is below precision_bits")
        if self.target_bits is None:
            object.__setattr__(self, "target_bits", self.precision_bits - 32)

    @property
    def bits(self) -> int:
        """The target as a bit count."""
        assert self.target_bits is not None
        return self.target_bits

    @property
    def target_abs_error(self) -> Any:
        """2**-target_bits as an exact mpf."""
        return mpmath.ldexp(mpmath.mpf(1), -self.bits)

    def workprec(self, extra_bits: int = 0) -> Any:
        """Context manager running mpmath at precision_bits + extra_bits."""
        return mpmath.workprec(self.precision_bits + extra_bits)

    def require(self, bits: int) -> int:
        """Check an internal working precision against the cap.

        Raises:
            PrecisionExhaustedError: bits exceeds max_precision_bits
        """
        if bits > self.max_precision_bits:
            raise PrecisionExhaustedError(
                f"working precision {bits} exceeds the cap {self.max_precision_bits}", suggested_bits=bits
            )
        return bits

    def escalate(self, bits: int | None = None) -> EvalContext:
        """Context with more precision (doubled by default) and the target scaled along."""
        new_bits = self.precision_bits * 2 if bits is None else bits
        self.require(new_bits)
        logger.debug("escalating precision %d -> %d bits", self.precision_bits, new_bits)
        return replace(self, precision_bits=new_bits, target_bits=new_bits - 32)

    def doubled(self) -> EvalContext:
        """Doubled precision with the same target, for self-consistency checks."""
        new_bits = self.require(self.precision_bits * 2)
        return replace(self, precision_bits=new_bits)


FLOAT_CONTEXT = EvalContext(precision_bits=96)


def as_mpf(value: Any) -> Any:
    """mpmath real from int, float, str or mpf."""
    return value if isinstance(value, mpmath.mpf) else mpmath.mpf(value)
