"""Airy, Bessel and transformed Bessel kernels, and the correction kernels K_j at numeric points.

Both kernels are integrable: K(x, y) = (p(x) q(y) - q(x) p(y)) / (x - y) with
(p, q)' = M(x) (p, q). Off the diagonal band the difference quotient is used;
inside it, the Taylor expansion in y - x whose coefficients come from M:
K(x, x + d) = -(W_1 + d W_2 / 2 + d^2 W_3 / 6), W_m = p (A_m phi)_2 - q (A_m phi)_1,
A_1 = M, A_(m+1) = A_m' + A_m M.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import replace
from typing import TYPE_CHECKING, Any

import mpmath

from edge_transition.errors import NonFiniteValueError, ParameterError
from edge_transition.expansion.assembly import COMPONENTS
from edge_transition.specfun.airy import airy_ai
from edge_transition.specfun.bessel import bessel_j
from edge_transition.specfun.context import EvalContext, as_mpf

if TYPE_CHECKING:
    from edge_transition.expansion.assembly import KernelExpansion
    from edge_transition.kernels.scaling import ScalingParams

logger = logging.getLogger(__name__)

DIAGONAL_BAND = 1e-3

Matrix = tuple[Any, Any, Any, Any]


def _mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def _add(*ms: Matrix) -> Matrix:
    return tuple(sum(entries) for entries in zip(*ms, strict=True))  # type: ignore[return-value]


def _scale(c: Any, m: Matrix) -> Matrix:
    return (c * m[0], c * m[1], c * m[2], c * m[3])


class IntegrableKernel(ABC):
    """Kernel (p(x) q(y) - q(x) p(y)) / (x - y) with a cache of (p, q) values.

    Attributes:
        ctx: precision of the returned values
        inner: working context with guard bits for the difference quotient
        band: |x - y| below which the diagonal expansion is used
    """

    def __init__(self, ctx: EvalContext, band: float = DIAGONAL_BAND):
        """Kernel at the given precision."""
        guard = ctx.bits // 3 + 32
        self.ctx = ctx
        self.inner = replace(
            ctx,
            precision_bits=ctx.require(ctx.precision_bits + guard),
            target_bits=ctx.bits + guard,
        )
        # O(band^3) Taylor error stays below the target
        self.band = min(band, 2.0 ** -(ctx.bits / 3))
        self._pairs: dict[Any, tuple[Any, Any]] = {}

    @abstractmethod
    def _pair(self, x: Any) -> tuple[Any, Any]:
        """(p(x), q(x)) at the inner precision."""

    @abstractmethod
    def transfer(self, x: Any) -> tuple[Matrix, Matrix, Matrix]:
        """M(x), M'(x) and M''(x)."""

    def pair(self, x: Any) -> tuple[Any, Any]:
        """Cached (p(x), q(x))."""
        key = as_mpf(x)
        if key not in self._pairs:
            self._pairs[key] = self._pair(key)
        return self._pairs[key]

    def taylor_terms(self, x: Any) -> tuple[Any, Any, Any]:
        """(W_1, W_2, W_3) at x."""
        m, m1, m2 = self.transfer(x)
        mm = _mul(m, m)
        a2 = _add(m1, mm)
        a3 = _add(m2, _scale(2, _mul(m1, m)), _mul(m, m1), _mul(mm, m))
        p, q = self.pair(x)
        return tuple(a[2] * p * p + (a[3] - a[0]) * p * q - a[1] * q * q for a in (m, a2, a3))  # type: ignore[return-value]

    def diagonal(self, x: Any) -> Any:
        """K(x, x) = -W_1(x)."""
        with mpmath.workprec(self.inner.precision_bits):
            w1, _, _ = self.taylor_terms(as_mpf(x))
            value = -w1
        with self.ctx.workprec():
            return +value

    def __call__(self, x: Any, y: Any) -> Any:
        """K(x, y)."""
        with mpmath.workprec(self.inner.precision_bits):
            x, y = as_mpf(x), as_mpf(y)
            delta = y - x
            if abs(delta) < self.band:
                w1, w2, w3 = self.taylor_terms(x)
                value = -(w1 + delta * w2 / 2 + delta * delta * w3 / 6)
            else:
                px, qx = self.pair(x)
                py, qy = self.pair(y)
                value = (px * qy - qx * py) / (x - y)
            if not mpmath.isfinite(value):
                raise NonFiniteValueError(f"kernel value at ({x}, {y}) is not finite")
        with self.ctx.workprec():
            return +value


class AiryKernel(IntegrableKernel):
    """(Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y); M = [[0, 1], [x, 0]]."""

    def _pair(self, x: Any) -> tuple[Any, Any]:
        value = airy_ai(x, self.inner)
        return value.ai, value.aip

    def transfer(self, x: Any) -> tuple[Matrix, Matrix, Matrix]:
        zero = mpmath.mpf(0)
        return (zero, mpmath.mpf(1), x, zero), (zero, zero, mpmath.mpf(1), zero), (zero,) * 4


class BesselKernel(IntegrableKernel):
    """(J(sqrt x) sqrt y J'(sqrt y) - sqrt x J'(sqrt x) J(sqrt y)) / (2 (x - y)).

    p = J_nu(sqrt x), q = sqrt(x) J_nu'(sqrt x) / 2 and M = [[0, 1/x], [-c, 0]]
    with c = (1 - nu^2/x) / 4.
    """

    def __init__(self, nu: Any, ctx: EvalContext, band: float = DIAGONAL_BAND):
        """Kernel of order nu >= 0."""
        super().__init__(ctx, band)
        self.nu = as_mpf(nu)

    def _pair(self, x: Any) -> tuple[Any, Any]:
        if x <= 0:
            raise ParameterError(f"Bessel kernel needs positive arguments, got {x}")
        root = mpmath.sqrt(x)
        value = bessel_j(self.nu, root, self.inner)
        return value.j, root * value.jp / 2

    def transfer(self, x: Any) -> tuple[Matrix, Matrix, Matrix]:
        zero = mpmath.mpf(0)
        nu2 = self.nu**2
        c = (1 - nu2 / x) / 4
        c1 = nu2 / (4 * x**2)
        c2 = -nu2 / (2 * x**3)
        return (zero, 1 / x, -c, zero), (zero, -1 / x**2, -c1, zero), (zero, 2 / x**3, -c2, zero)


class TransformedKernel:
    """2 nu^2 h sqrt((1 - h x)(1 - h y)) K_nu^Bes(phi(x), phi(y)) for x, y < 1/h."""

    def __init__(self, params: ScalingParams, ctx: EvalContext, band: float = DIAGONAL_BAND):
        """Transformed kernel for the given scale."""
        self.params = params
        self.ctx = ctx
        self.bessel = BesselKernel(params.nu, ctx, band)

    def __call__(self, x: Any, y: Any) -> Any:
        """K-hat(x, y)."""
        with mpmath.workprec(self.bessel.inner.precision_bits):
            p = self.params
            root = mpmath.sqrt(p.sqrt_phi(x) * p.sqrt_phi(y) / p.nu**2)
            value = 2 * p.nu**2 * p.h * root * self.bessel(p.phi(x), p.phi(y))
        with self.ctx.workprec():
            return +value


def airy_kernel(x: Any, y: Any, ctx: EvalContext) -> Any:
    """K^Ai(x, y)."""
    return AiryKernel(ctx)(x, y)


def bessel_kernel(x: Any, y: Any, nu: Any, ctx: EvalContext) -> Any:
    """K_nu^Bes(x, y) for x, y > 0."""
    return BesselKernel(nu, ctx)(x, y)


def transformed_kernel(x: Any, y: Any, params: ScalingParams, ctx: EvalContext) -> Any:
    """K-hat_nu(x, y) for x, y < 1/h."""
    return TransformedKernel(params, ctx)(x, y)


def kernel_correction_eval(
    expansion: KernelExpansion,
    j: int,
    x: Any,
    y: Any,
    ctx: EvalContext,
    airy: AiryKernel | None = None,
) -> Any:
    """K_j(x, y) = sum p_(j, kappa lambda)(x, y) Ai^(kappa)(x) Ai^(lambda)(y).

    Args:
        expansion: exact table
        j: order, 1 <= j <= expansion.order
        x: first argument
        y: second argument
        ctx: precision
        airy: kernel whose cached Airy values are reused
    """
    if not 1 <= j <= expansion.order:
        raise ParameterError(f"K_{j} is not in a table of order {expansion.order}")
    airy = airy or AiryKernel(ctx)
    with mpmath.workprec(airy.inner.precision_bits):
        x, y = as_mpf(x), as_mpf(y)
        at_x, at_y = airy.pair(x), airy.pair(y)
        total = mpmath.mpf(0)
        for comp in COMPONENTS:
            kappa, lam = int(comp[0]), int(comp[1])
            total += expansion.terms[j][comp].evaluate(x, y) * at_x[kappa] * at_y[lam]
    with ctx.workprec():
        return +total


def expansion_partial_sum(
    expansion: KernelExpansion,
    m: int,
    x: Any,
    y: Any,
    params: ScalingParams,
    ctx: EvalContext,
    airy: AiryKernel | None = None,
) -> Any:
    """K^Ai(x, y) + sum_(j <= m) K_j(x, y) h^j."""
    airy = airy or AiryKernel(ctx)
    total = airy(x, y)
    with mpmath.workprec(airy.inner.precision_bits):
        for j in range(1, m + 1):
            total += kernel_correction_eval(expansion, j, x, y, ctx, airy) * params.h**j
    with ctx.workprec():
        return +total
