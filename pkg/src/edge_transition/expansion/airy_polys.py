"""Airy derivative polynomials and the Airy asymptotic coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from edge_transition.algebra.poly import Poly1
from edge_transition.errors import ParameterError

X = Poly1([0, 1])


@dataclass(frozen=True)
class AiryPolyPair:
    """Ai^(m)(x) = P(x) Ai(x) + Q(x) Ai'(x)."""

    m: int
    P: Poly1
    Q: Poly1


@dataclass(frozen=True)
class AsympCoeffs:
    """Coefficients u_k, v_k of the large-argument Airy expansion."""

    k: int
    u: Fraction
    v: Fraction


def airy_derivative_polys(m_max: int) -> list[AiryPolyPair]:
    """(P_m, Q_m) for 0 <= m <= m_max.

    Uses P_(m+1) = P_m' + x Q_m and Q_(m+1) = Q_m' + P_m, from Ai'' = x Ai.

    Args:
        m_max: largest derivative order
    Returns:
        pairs indexed by m
    """
    if m_max < 0:
        raise ParameterError("m_max must be nonnegative")
    pairs = [AiryPolyPair(0, Poly1([1]), Poly1())]
    for m in range(m_max):
        prev = pairs[-1]
        pairs.append(
            AiryPolyPair(
                m + 1,
                prev.P.derivative() + X * prev.Q,
                prev.Q.derivative() + prev.P,
            )
        )
    return pairs


def airy_asymp_coeffs(k_max: int) -> list[AsympCoeffs]:
    """Exact u_k, v_k for k <= k_max, with u_0 = v_0 = 1.

    Args:
        k_max: largest index
    Returns:
        coefficients indexed by k
    """
    if k_max < 0:
        raise ParameterError("k_max must be nonnegative")
    out = [AsympCoeffs(0, Fraction(1), Fraction(1))]
    u = Fraction(1)
    for k in range(1, k_max + 1):
        u = u * Fraction((6 * k - 5) * (6 * k - 3) * (6 * k - 1), 216 * (2 * k - 1) * k)
        out.append(AsympCoeffs(k, u, u * Fraction(6 * k + 1, 1 - 6 * k)))
    return out


def wronskian_sum(n: int) -> Poly1:
    """sum_j (P_j Q_(N+1-j) - Q_j P_(N+1-j)) / (j! (N-j)!) as an exact polynomial."""
    if n < 1:
        raise ParameterError("N must be at least 1")
    pairs = airy_derivative_polys(n + 1)
    total = Poly1()
    for j in range(n + 1):
        weight = Fraction(1, factorial(j) * factorial(n - j))
        term = pairs[j].P * pairs[n + 1 - j].Q - pairs[j].Q * pairs[n + 1 - j].P
        total = total + term * weight
    return total


def lemma_identity_check(n: int) -> bool:
    """Whether the binomial Wronskian-type sum of the Airy polynomials vanishes for N = n."""
    return wronskian_sum(n).is_zero()
