"""Assembly of the correction kernels K_j from the prefactor, Airy and sandwich series.

For the transformed Bessel kernel,

    (x - y) K^(x, y) = G(h) [B_y M11 A_x - i B_y M12 B_x - i A_y M21 A_x - A_y M22 B_x],

where A_v = Ai(zeta_v), B_v = Ai'(zeta_v), zeta_v = nu^(2/3) f((1 - h v)^2),
M is the sandwich and G(h) = sqrt((1 - hx)(1 - hy)) / (1 - h(x + y)/2).
Each product is expanded on the basis Ai^(kappa)(x) Ai^(lambda)(y).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from edge_transition.algebra.algnum import AlgNum
from edge_transition.algebra.poly import BivarPoly, Poly1, exact_divide_x_minus_y
from edge_transition.algebra.series import TruncSeries
from edge_transition.errors import FieldExtensionError, ParameterError, TheoryViolationError
from edge_transition.expansion.airy_polys import airy_derivative_polys
from edge_transition.expansion.conformal import H, bivariate, p_table
from edge_transition.expansion.riemann_hilbert import BranchConvention
from edge_transition.expansion.sandwich import sandwich_matrix

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

COMPONENTS = ("00", "01", "10", "11")
PRINTED_MAX_ORDER = 2
MINUS_I = AlgNum(c=Fraction(-1))


def _as_bivar(value: Any) -> BivarPoly:
    return value if isinstance(value, BivarPoly) else BivarPoly.constant(value)


@dataclass
class KernelExpansion:
    """Exact table p_(j, kappa lambda)(x, y) for 1 <= j <= order.

    K_j(x, y) = sum_(kappa, lambda) p_(j, kappa lambda)(x, y) Ai^(kappa)(x) Ai^(lambda)(y).
    """

    order: int
    terms: dict[int, dict[str, BivarPoly]] = field(default_factory=dict)
    branch: BranchConvention = BranchConvention.PRINCIPAL

    def p(self, j: int, kappa: int, lam: int) -> BivarPoly:
        """p_(j, kappa lambda)."""
        if not 1 <= j <= self.order:
            raise ParameterError(f"j={j} outside 1..{self.order}")
        return self.terms[j][f"{kappa}{lam}"]

    def __iter__(self) -> Iterator[tuple[int, str, BivarPoly]]:
        """Iterate over (j, component, polynomial) in order."""
        for j in sorted(self.terms):
            for comp in COMPONENTS:
                yield j, comp, self.terms[j][comp]

    def __eq__(self, other: object) -> bool:
        """Same order and same polynomials."""
        if not isinstance(other, KernelExpansion):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self) -> int:
        """Hash on the order only; instances are compared by table."""
        return hash(self.order)

    def truncated(self, order: int) -> KernelExpansion:
        """Sub-table for j <= order."""
        return KernelExpansion(
            order, {j: dict(t) for j, t in self.terms.items() if j <= order}, self.branch
        )

    def check_invariants(self) -> None:
        """Rationality and the symmetry relations of the table.

        Raises:
            FieldExtensionError: a coefficient is not rational
            TheoryViolationError: a symmetry relation fails
        """
        for j, comp, poly in self:
            if not poly.is_rational():
                raise FieldExtensionError("non-rational coefficient", j=j, component=comp)
        for j, table in self.terms.items():
            for comp in ("00", "11"):
                if not table[comp].is_symmetric():
                    raise TheoryViolationError("not symmetric in (x, y)", j=j, component=comp)
            if table["01"] != table["10"].swap():
                raise TheoryViolationError("p_01(x, y) != p_10(y, x)", j=j, component="01")

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> KernelExpansion:
        """Build from the {"order", "terms": [{"j", "kappa", "lambda", "poly"}]} document."""
        order = int(data["order"])
        terms: dict[int, dict[str, BivarPoly]] = {}
        for entry in data.get("terms", []):
            comp = f"{int(entry['kappa'])}{int(entry['lambda'])}"
            terms.setdefault(int(entry["j"]), {})[comp] = BivarPoly.from_records(entry["poly"])
        branch = BranchConvention(data.get("branch", BranchConvention.PRINCIPAL.value))
        return cls(order, terms, branch)

    def to_json(self) -> dict[str, Any]:
        """Document in the canonical JSON schema."""
        return {
            "order": self.order,
            "branch": self.branch.value,
            "terms": [
                {
                    "j": j,
                    "kappa": int(comp[0]),
                    "lambda": int(comp[1]),
                    "poly": poly.to_records(),
                }
                for j, comp, poly in self
            ],
        }


def prefactor_g(j_max: int) -> TruncSeries:
    """G(h) = (1 - hx)^(1/2) (1 - hy)^(1/2) (1 - h(x + y)/2)^(-1) through h**j_max."""
    x, y = BivarPoly.x(), BivarPoly.y()
    target = j_max + 1
    one = BivarPoly.constant(1)
    sqrt_x = TruncSeries(H, 0, (one, -x)).pow_rational(Fraction(1, 2), target)
    sqrt_y = TruncSeries(H, 0, (one, -y)).pow_rational(Fraction(1, 2), target)
    denom = TruncSeries(H, 0, (one, -(x + y) * Fraction(1, 2))).pow_rational(-1, target)
    return sqrt_x * sqrt_y * denom


def prefactor_series(j_max: int) -> dict[int, BivarPoly]:
    """r_j with G(h) = 1 - (x - y)^2 sum_(j>=2) r_j h^j, for 2 <= j <= j_max.

    Raises:
        TheoryViolationError: an h^1 term is present or (x - y)^2 does not divide
    """
    if j_max < 2:
        raise ParameterError("prefactor_series needs j_max >= 2")
    g = prefactor_g(j_max)
    if g.coeff(0) != 1 or g.coeff(1) != 0:
        raise TheoryViolationError("prefactor does not start with 1 + O(h^2)")
    out: dict[int, BivarPoly] = {}
    for j in range(2, j_max + 1):
        once = exact_divide_x_minus_y(-_as_bivar(g.coeff(j)), j=j)
        out[j] = exact_divide_x_minus_y(once, j=j)
    return out


@dataclass(frozen=True)
class AiryCoefficientSeries:
    """Ai(zeta_v) and Ai'(zeta_v) on the basis (Ai(v), Ai'(v)), as h-series per basis element."""

    a: tuple[TruncSeries, TruncSeries]
    b: tuple[TruncSeries, TruncSeries]


def airy_coefficient_series(j_max: int, variable: str) -> AiryCoefficientSeries:
    """Coefficient series sum_m p_(m,j) (P_m, Q_m) and sum_m p_(m,j) (P_(m+1), Q_(m+1)).

    Args:
        j_max: highest power of h
        variable: "x" or "y"
    Returns:
        the four coefficient series with bivariate polynomial coefficients
    """
    var = bivariate(variable)
    embed = BivarPoly.from_x if variable == "x" else BivarPoly.from_y
    table = p_table(j_max, j_max, var)
    pairs = airy_derivative_polys(j_max + 1)
    a_terms: list[dict[int, BivarPoly]] = [{}, {}]
    b_terms: list[dict[int, BivarPoly]] = [{}, {}]
    for (m, j), p in table.items():
        p_b = _as_bivar(p)
        for basis, (poly_a, poly_b) in enumerate(
            ((pairs[m].P, pairs[m + 1].P), (pairs[m].Q, pairs[m + 1].Q))
        ):
            a_terms[basis][j] = a_terms[basis].get(j, BivarPoly()) + p_b * embed(poly_a)
            b_terms[basis][j] = b_terms[basis].get(j, BivarPoly()) + p_b * embed(poly_b)
    target = j_max + 1
    return AiryCoefficientSeries(
        a=(TruncSeries.from_terms(H, a_terms[0], target), TruncSeries.from_terms(H, a_terms[1], target)),
        b=(TruncSeries.from_terms(H, b_terms[0], target), TruncSeries.from_terms(H, b_terms[1], target)),
    )


def airy_part_series(j_max: int) -> dict[str, TruncSeries]:
    """Ai(zeta_x) Ai'(zeta_y) - Ai'(zeta_x) Ai(zeta_y) on the four-element basis."""
    sx = airy_coefficient_series(j_max, "x")
    sy = airy_coefficient_series(j_max, "y")
    return {
        f"{kappa}{lam}": sx.a[kappa] * sy.b[lam] - sx.b[kappa] * sy.a[lam]
        for kappa in (0, 1)
        for lam in (0, 1)
    }


def a_coeffs(n: int) -> tuple[BivarPoly, BivarPoly, BivarPoly]:
    """(a_(N,00), a_(N,01), a_(N,11)) from their displayed double and triple sums.

    The Ai'(x) Ai(y) coefficient of the Airy part is -a_(N,01)(y, x).
    """
    if n < 1:
        raise ParameterError("a_coeffs needs N >= 1")
    table = p_table(n, n)
    pairs = airy_derivative_polys(n + 2)
    P = [pair.P for pair in pairs]
    Q = [pair.Q for pair in pairs]

    def p(m: int, j: int) -> Poly1:
        return table.get((m, j), Poly1())

    def bx(poly: Poly1) -> BivarPoly:
        return BivarPoly.from_x(poly)

    def by(poly: Poly1) -> BivarPoly:
        return BivarPoly.from_y(poly)

    a00 = BivarPoly()
    a01 = BivarPoly()
    a11 = BivarPoly()
    for k in range(1, n + 1):
        a00 = a00 + by(p(k, n) * P[k + 1]) - bx(p(k, n) * P[k + 1])
        a11 = a11 + bx(p(k, n) * Q[k]) - by(p(k, n) * Q[k])
        if k >= 2:
            a01 = a01 + by(p(k, n) * Q[k + 1]) + bx(p(k, n) * P[k])
    for j in range(1, n):
        k = n - j
        for m in range(1, j + 1):
            for t in range(1, k + 1):
                pmj_x, pmj_y = bx(p(m, j)), by(p(m, j))
                ptk_x, ptk_y = bx(p(t, k)), by(p(t, k))
                a00 = a00 + pmj_x * ptk_y * bx(P[m]) * by(P[t + 1])
                a00 = a00 - pmj_y * ptk_x * by(P[m]) * bx(P[t + 1])
                a01 = a01 + pmj_x * ptk_y * (bx(P[m]) * by(Q[t + 1]) - bx(P[m + 1]) * by(Q[t]))
                a11 = a11 + pmj_x * ptk_y * bx(Q[m]) * by(Q[t + 1])
                a11 = a11 - pmj_y * ptk_x * by(Q[m]) * bx(Q[t + 1])
    return a00, a01, a11


def reduced_a_coeffs(n: int) -> tuple[BivarPoly, BivarPoly, BivarPoly]:
    """a_(N, kappa lambda) / (x - y), exactly.

    Raises:
        DivisionRemainderError: a displayed sum is not divisible by (x - y)
    """
    a00, a01, a11 = a_coeffs(n)
    return (
        exact_divide_x_minus_y(a00, j=n, component="00"),
        exact_divide_x_minus_y(a01, j=n, component="01"),
        exact_divide_x_minus_y(a11, j=n, component="11"),
    )


def _basis_series(j_max: int, branch: BranchConvention) -> dict[str, TruncSeries]:
    """(x - y) K^ on the four-element basis, through h**j_max."""
    g = prefactor_g(j_max)
    m = sandwich_matrix(j_max, branch)
    sx = airy_coefficient_series(j_max, "x")
    sy = airy_coefficient_series(j_max, "y")
    out: dict[str, TruncSeries] = {}
    for kappa in (0, 1):
        for lam in (0, 1):
            body = (
                sx.a[kappa] * sy.b[lam] * m.a11
                + sx.b[kappa] * sy.b[lam] * m.a12 * MINUS_I
                + sx.a[kappa] * sy.a[lam] * m.a21 * MINUS_I
                - sx.b[kappa] * sy.a[lam] * m.a22
            )
            out[f"{kappa}{lam}"] = (g * body).truncate(j_max + 1)
    return out


def _derive(order: int, j_max: int, branch: BranchConvention) -> KernelExpansion:
    series = _basis_series(j_max, branch)
    leading = {"00": 0, "01": 1, "10": -1, "11": 0}
    for comp, value in leading.items():
        if series[comp].coeff(0) != value:
            raise TheoryViolationError(
                "leading term is not the Airy kernel numerator", j=0, component=comp
            )
    terms: dict[int, dict[str, BivarPoly]] = {}
    for j in range(1, order + 1):
        row: dict[str, BivarPoly] = {}
        for comp in COMPONENTS:
            quotient = exact_divide_x_minus_y(_as_bivar(series[comp].coeff(j)), j=j, component=comp)
            try:
                row[comp] = quotient.to_rational()
            except FieldExtensionError as err:
                raise FieldExtensionError(str(err), j=j, component=comp) from err
        terms[j] = row
        logger.debug("K_%d derived with degrees %s", j, {c: p.total_degree for c, p in row.items()})
    return KernelExpansion(order, terms, branch)


def assemble_kernel_expansion(
    m: int,
    branch: BranchConvention = BranchConvention.PRINCIPAL,
    *,
    padding: int = 2,
    verify_padding: bool = False,
) -> KernelExpansion:
    """Exact correction kernels K_1..K_m.

    Args:
        m: highest order, m >= 0 (m = 0 gives the empty table)
        branch: branch convention of the odd jumps
        padding: extra orders carried through every series
        verify_padding: re-derive with one more padding order and compare
    Returns:
        the checked table
    Raises:
        ParameterError: negative order, or the PRINTED convention beyond its valid orders
        TheoryViolationError: a divisibility, rationality or symmetry check failed
    """
    if m < 0:
        raise ParameterError("order must be nonnegative")
    if branch is BranchConvention.PRINTED and m > PRINTED_MAX_ORDER:
        raise ParameterError(f"the printed branch only reproduces K_1..K_{PRINTED_MAX_ORDER}; use principal for m={m}")
    if m == 0:
        return KernelExpansion(0, {}, branch)
    expansion = _derive(m, m + padding, branch)
    expansion.check_invariants()
    if verify_padding:
        again = _derive(m, m + padding + 1, branch)
        if again != expansion:
            raise TheoryViolationError("derived coefficients depend on the truncation padding")
        logger.info("padding check passed for order %d", m)
    return expansion
