"""The hard-to-soft scaling h = 2^(-1/3) nu^(-2/3) and the chart phi(t) = nu^2 (1 - h t)^2."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import mpmath

from edge_transition.errors import ParameterError
from edge_transition.specfun.context import EvalContext, as_mpf


@dataclass(frozen=True)
class ScalingParams:
    """Order nu of the Bessel kernel and its scale h."""

    nu: Any
    h: Any

    @classmethod
    def from_nu(cls, nu: Any, ctx: EvalContext) -> ScalingParams:
        """Scale for order nu > 0 at the context precision (plus guard bits)."""
        with ctx.workprec(64):
            value = as_mpf(nu)
            if value <= 0:
                raise ParameterError(f"nu must be positive, got {nu}")
            h = mpmath.cbrt(2) ** -1 * value ** (-mpmath.mpf(2) / 3)
        return cls(value, h)

    @property
    def upper(self) -> Any:
        """1/h, the end of the hard-edge chart."""
        return 1 / self.h

    def check(self, t: Any) -> None:
        """Raise `ParameterError` unless t < 1/h."""
        if as_mpf(t) * self.h >= 1:
            raise ParameterError(f"t = {t} is not below 1/h = {mpmath.nstr(self.upper, 8)}")

    def sqrt_phi(self, t: Any) -> Any:
        """nu (1 - h t), the positive root of phi(t)."""
        self.check(t)
        return self.nu * (1 - self.h * as_mpf(t))

    def phi(self, t: Any) -> Any:
        """nu^2 (1 - h t)^2."""
        return self.sqrt_phi(t) ** 2

    def jacobian(self, t: Any) -> Any:
        """|phi'(t)| = 2 nu^2 h (1 - h t)."""
        return 2 * self.nu * self.h * self.sqrt_phi(t)

    def chart_point(self, s: Any) -> Any:
        """t with phi(t) = s and t < 1/h: (1 - sqrt(s)/nu) / h."""
        s = as_mpf(s)
        if s <= 0:
            raise ParameterError("the hard-edge gap needs s > 0")
        return (1 - mpmath.sqrt(s) / self.nu) / self.h

    def grid_limit(self, epsilon: float) -> Any:
        """(1 - sqrt(1 - epsilon)) / h: points below it map into the disc of radius epsilon about z = 1."""
        if not 0 < epsilon < 1:
            raise ParameterError("disc radius must lie in (0, 1)")
        return (1 - mpmath.sqrt(1 - mpmath.mpf(epsilon))) / self.h
