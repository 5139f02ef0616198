"""The Airy model parametrix, its jump conditions and its large-z expansion.

Rays: Sigma_1 = (0, oo), Sigma_2 at arg 3pi/4, Sigma_3 = (-oo, 0), Sigma_4 at
arg -3pi/4. Sectors: I (0, 3pi/4), II (3pi/4, pi), III (-pi, -3pi/4), IV (-3pi/4, 0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import mpmath

from edge_transition.algebra.poly import coeff_to_mp
from edge_transition.errors import ParameterError
from edge_transition.expansion.airy_polys import airy_asymp_coeffs
from edge_transition.specfun.airy import airy_ai_complex

if TYPE_CHECKING:
    import numpy as np

    from edge_transition.kernels.phase import Side
    from edge_transition.specfun.context import EvalContext

logger = logging.getLogger(__name__)

RAY_ANGLES = {1: 0.0, 2: 0.75, 3: 1.0, 4: -0.75}  # in units of pi

# ray -> (sector on the "+" side, sector on the "-" side)
RAY_SIDES = {1: ("I", "IV"), 2: ("I", "II"), 3: ("II", "III"), 4: ("III", "IV")}


def jump_matrix(ray: int) -> mpmath.matrix:
    """Jump J with Phi_+ = Phi_- J on the given ray."""
    if ray == 1:
        return mpmath.matrix([[1, 1], [0, 1]])
    if ray in (2, 4):
        return mpmath.matrix([[1, 0], [1, 1]])
    if ray == 3:
        return mpmath.matrix([[0, 1], [-1, 0]])
    raise ParameterError(f"no ray {ray}")


def _ray_of(z: Any, bits: int) -> int | None:
    if z == 0:
        raise ParameterError("the parametrix is not evaluated at z = 0")
    angle = mpmath.arg(z) / mpmath.pi
    tol = mpmath.ldexp(mpmath.mpf(1), 8 - bits)
    for ray, ray_angle in RAY_ANGLES.items():
        if abs(angle - ray_angle) < tol:
            return ray
    if abs(angle + 1) < tol:
        return 3
    return None


def sector_of(z: Any, side: Side | None = None, bits: int = 53) -> str:
    """Sector label of z; points within 2**(8 - bits) of a ray (in arg / pi) need a side."""
    ray = _ray_of(z, bits)
    if ray is not None:
        if side not in ("+", "-"):
            raise ParameterError(f"z = {z} lies on Sigma_{ray}; pass side='+' or side='-'")
        plus, minus = RAY_SIDES[ray]
        return plus if side == "+" else minus
    angle = mpmath.arg(z) / mpmath.pi
    if 0 < angle < 0.75:
        return "I"
    if angle > 0.75:
        return "II"
    if angle < -0.75:
        return "III"
    return "IV"


def airy_parametrix(z: Any, ctx: EvalContext, side: Side | None = None) -> mpmath.matrix:
    """Phi^Ai(z) from the sectorwise formula with omega = exp(2 pi i / 3).

    Args:
        z: complex point, |z| <= 50
        ctx: precision
        side: "+" or "-" for points on one of the rays
    Returns:
        2x2 complex matrix
    Raises:
        ParameterError: z on a ray without a side, or z = 0
    """
    with ctx.workprec(16):
        z = mpmath.mpc(z)
        sector = sector_of(z, side, ctx.precision_bits)
        omega = mpmath.expjpi(mpmath.mpf(2) / 3)
        omega2 = omega * omega

        def at(scale: Any) -> tuple[Any, Any]:
            value = airy_ai_complex(scale * z, ctx)
            return value.ai, value.aip

        if sector in ("I", "IV"):
            a0, d0 = at(1)
        if sector in ("I", "II", "III"):
            a2, d2 = at(omega2)
        if sector in ("II", "III", "IV"):
            a1, d1 = at(omega)
        j = mpmath.mpc(0, 1)
        if sector == "I":
            rows = [[a0, -omega2 * a2], [-j * d0, j * omega * d2]]
        elif sector == "II":
            rows = [[-omega * a1, -omega2 * a2], [j * omega2 * d1, j * omega * d2]]
        elif sector == "III":
            rows = [[-omega2 * a2, omega * a1], [j * omega * d2, -j * omega2 * d1]]
        else:
            rows = [[a0, omega * a1], [-j * d0, -j * omega2 * d1]]
        return mpmath.sqrt(2 * mpmath.pi) * mpmath.matrix(rows)


def _max_abs(m: mpmath.matrix) -> Any:
    return max(abs(m[i, k]) for i in range(2) for k in range(2))


@dataclass(frozen=True)
class ParametrixCheck:
    """Largest deviations found by `check_parametrix`."""

    max_det_error: Any
    max_jump_residual: dict[int, Any]

    @property
    def worst_jump(self) -> Any:
        """Largest jump residual over all rays."""
        return max(self.max_jump_residual.values())


def jump_residual(z: Any, ray: int, ctx: EvalContext) -> Any:
    """max |Phi_+(z) - Phi_-(z) J| over the entries, for z on the ray."""
    plus = airy_parametrix(z, ctx, "+")
    minus = airy_parametrix(z, ctx, "-")
    with ctx.workprec():
        return _max_abs(plus - minus * jump_matrix(ray))


def check_parametrix(
    ctx: EvalContext,
    points_per_ray: int = 20,
    r_min: float = 0.1,
    r_max: float = 5.0,
    rng: np.random.Generator | None = None,
) -> ParametrixCheck:
    """Determinant and jump residuals at points_per_ray points on every ray and beside it.

    The radii are equally spaced in [r_min, r_max], or drawn uniformly from it with `rng`.
    """
    det_errors = []
    residuals: dict[int, Any] = {}
    with ctx.workprec():
        if rng is None:
            radii = mpmath.linspace(r_min, r_max, points_per_ray)
        else:
            radii = [mpmath.mpf(float(r)) for r in sorted(rng.uniform(r_min, r_max, points_per_ray))]
        for ray, angle in RAY_ANGLES.items():
            worst = mpmath.mpf(0)
            for r in radii:
                z = r * mpmath.expjpi(angle)
                worst = max(worst, jump_residual(z, ray, ctx))
                for offset in (mpmath.mpf(1) / 16, -mpmath.mpf(1) / 16):
                    beside = r * mpmath.expjpi(angle + offset)
                    det_errors.append(abs(mpmath.det(airy_parametrix(beside, ctx)) - 1))
            residuals[ray] = worst
            logger.debug("Sigma_%d: max jump residual %s", ray, mpmath.nstr(worst, 3))
    return ParametrixCheck(max(det_errors), residuals)


def asymptotic_series(z: Any, k_max: int, ctx: EvalContext) -> mpmath.matrix:
    """Large-z expansion of Phi^Ai(z) exp((2/3) z^(3/2) sigma3) through z^(-3 k_max / 2)."""
    coeffs = airy_asymp_coeffs(k_max)
    with ctx.workprec(16):
        z = mpmath.mpc(z)
        j = mpmath.mpc(0, 1)
        s11 = s12 = s21 = s22 = mpmath.mpc(0)
        for c in coeffs:
            power = z ** (-mpmath.mpf(3 * c.k) / 2)
            plus = coeff_to_mp(c.u + c.v)
            minus = coeff_to_mp(c.u - c.v)
            neg = mpmath.mpf(-1.5) ** c.k
            pos = mpmath.mpf(1.5) ** c.k
            s11 += neg * plus * power
            s12 += j * pos * minus * power
            s21 += -j * neg * minus * power
            s22 += pos * plus * power
        quarter = z ** (mpmath.mpf(1) / 4)
        scale = mpmath.matrix([[1 / quarter, 0], [0, quarter]])
        mixing = mpmath.matrix([[1, j], [j, 1]])
        return scale * mixing * mpmath.matrix([[s11, s12], [s21, s22]]) / (2 * mpmath.sqrt(2))


def asymptotic_residual(z: Any, ctx: EvalContext, k_max: int = 2) -> Any:
    """Normalized deviation of Phi^Ai from its expansion truncated at k_max; O(|z|^(-3(k_max+1)/2))."""
    phi = airy_parametrix(z, ctx)
    approx = asymptotic_series(z, k_max, ctx)
    with ctx.workprec(16):
        z = mpmath.mpc(z)
        zeta = 2 * z ** (mpmath.mpf(3) / 2) / 3
        unscale = mpmath.matrix([[z ** (mpmath.mpf(1) / 4), 0], [0, z ** (-mpmath.mpf(1) / 4)]])
        corrected = phi * mpmath.diag([mpmath.exp(zeta), mpmath.exp(-zeta)])
        value = _max_abs(unscale * (corrected - approx))
    with ctx.workprec():
        return +value
