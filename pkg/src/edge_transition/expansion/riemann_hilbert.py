"""Jump matrices J_k on the disc boundary and the additive splitting R_k = R_k^out / R_k^in.

All series are Laurent series in s = z - 1. The jump is
J_R = I + sum_k J_k h^(3k/2); the correction R = I + sum_k R_k h^(3k/2)
is split order by order into its part outside the disc (a principal part)
and its part inside (analytic at z = 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from edge_transition.algebra.algnum import AlgNum, ScaledConstant
from edge_transition.algebra.series import Mat2Series
from edge_transition.errors import ParameterError, TheoryViolationError
from edge_transition.expansion.airy_polys import airy_asymp_coeffs
from edge_transition.expansion.conformal import S, f_series

logger = logging.getLogger(__name__)


class BranchConvention(StrEnum):
    """Sign of the (1,2) entry of the odd-k jump matrices.

    PRINCIPAL takes f^(3/2) and (1 - z)^(1/2) positive on (0, 1); it is the only
    convention for which J_R is a consistent jump at every order.
    PRINTED flips the (1,2) entry of every odd J_k so that the (z-1)^-2 entry of J_1
    is +5*sqrt2/24. It reproduces the displayed J_1 and R_1 and gives the same K_1 and
    K_2, but breaks K_3 and the symmetry of K_4; it is kept for the anchor values only.
    """

    PRINTED = "printed"
    PRINCIPAL = "principal"

    @property
    def sigma(self) -> int:
        """Sign applied to the (1,2) entry of odd-k jumps."""
        return -1 if self is BranchConvention.PRINTED else 1


def _j_prefactor(k: int) -> AlgNum:
    """3^k 2^(k/2), materialized in Q(sqrt2)."""
    return ScaledConstant.of(3**k, Fraction(k, 2)).to_algnum()


def j_matrix_series(
    k: int, order: int, branch: BranchConvention = BranchConvention.PRINCIPAL
) -> Mat2Series:
    """Laurent expansion of J_k about z = 1, known modulo s**order.

    With f = -2^(-2/3) s r(s) and w^2 = -s:
    even k: J_k = (-1)^(k/2) 3^k 2^(k/2) s^(-3k/2) r^(-3k/2) diag(u_k, v_k);
    odd k: J_k = -3^k 2^(k/2) r^(-3k/2) [[0, sigma (-s)^(-(3k+1)/2) u_k], [(-s)^(-(3k-1)/2) v_k, 0]].

    Args:
        k: index, at least 1
        order: absolute truncation order in s
        branch: branch convention for odd k
    Returns:
        the 2x2 Laurent series
    """
    if k < 1:
        raise ParameterError("J_k needs k >= 1")
    coeffs = airy_asymp_coeffs(k)[k]
    prefactor = _j_prefactor(k)
    lowest = (3 * k + 1) // 2
    r = f_series(order + lowest).unit
    unit = r.pow_rational(Fraction(-3 * k, 2))
    if k % 2 == 0:
        sign = -1 if (k // 2) % 2 else 1
        scale = unit.shift(-3 * k // 2) * (prefactor * sign)
        J = Mat2Series.diagonal(scale * coeffs.u, scale * coeffs.v)
    else:
        upper_exp = (3 * k + 1) // 2
        lower_exp = (3 * k - 1) // 2
        # (-s)^(-n) = (-1)^n s^(-n)
        upper_sign = branch.sigma * (-1) ** upper_exp
        lower_sign = (-1) ** lower_exp
        base = unit * (-prefactor)
        J = Mat2Series.offdiagonal(
            base.shift(-upper_exp) * (coeffs.u * upper_sign),
            base.shift(-lower_exp) * (coeffs.v * lower_sign),
        )
    return J.truncate(order)


@dataclass(frozen=True)
class RPair:
    """R_k outside the disc (principal part) and inside it (Taylor series)."""

    k: int
    outer: Mat2Series
    inner: Mat2Series


def _check_parity(k: int, m: Mat2Series, label: str) -> None:
    ok = m.is_offdiagonal() if k % 2 else m.is_diagonal()
    if not ok:
        kind = "off-diagonal" if k % 2 else "diagonal"
        raise TheoryViolationError(f"{label}_{k} is not {kind}")


def r_outer_inner(
    k_max: int, order: int, branch: BranchConvention = BranchConvention.PRINCIPAL
) -> list[RPair]:
    """Solve the additive jump problems for R_1..R_k_max.

    Q_k = sum_(l=1..k) R_(k-l)^in J_l with R_0 = I, R_k^out = PP(Q_k) and
    R_k^in = R_k^out - Q_k, so that R^out = R^in J_R on the disc boundary.

    Args:
        k_max: number of correction terms
        order: Taylor order of every returned R_k^in
        branch: branch convention of the odd jumps
    Returns:
        pairs indexed from k = 1
    Raises:
        TheoryViolationError: R_k^in not analytic, or the parity pattern broken
    """
    if k_max < 1:
        raise ParameterError("k_max must be at least 1")
    jump_order = order + 2 * k_max + 2
    jumps = {n: j_matrix_series(n, jump_order, branch) for n in range(1, k_max + 1)}
    inners: dict[int, Mat2Series] = {0: Mat2Series.identity(S)}
    pairs: list[RPair] = []
    for k in range(1, k_max + 1):
        q = inners[k - 1] * jumps[1]
        for n in range(2, k + 1):
            q = q + inners[k - n] * jumps[n]
        outer = q.principal_part()
        inner = outer - q
        if not inner.principal_part().is_zero():
            raise TheoryViolationError(f"R_{k} inside the disc is not analytic")
        if any(e.order is not None and e.order < order for e in inner.entries()):
            raise TheoryViolationError(f"R_{k} lost precision below order {order}")
        _check_parity(k, outer, "R^out")
        _check_parity(k, inner, "R^in")
        logger.debug("R_%d: outer valuation %d", k, outer.valuation)
        inners[k] = inner
        pairs.append(RPair(k, outer, inner.truncate(order)))
    return pairs
