"""Truncated Laurent series over a generic coefficient ring, and 2x2 matrices of them.

Coefficients may be rationals, `AlgNum`, `Poly1` or `BivarPoly`: anything
supporting `+`, `*` and comparison with 0. A series with `order=None` is exact
(a Laurent polynomial); otherwise it is known modulo var**order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from edge_transition.algebra.algnum import AlgNum
from edge_transition.errors import ParameterError, VariableMismatchError

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator

logger = logging.getLogger(__name__)


def _is_zero(value: Any) -> bool:
    return bool(value == 0)


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def binomial(alpha: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(alpha, k)."""
    result = Fraction(1)
    for i in range(k):
        result = result * (alpha - i) / (i + 1)
    return result


@dataclass(frozen=True, eq=False)
class TruncSeries:
    """Truncated Laurent series sum_k coeffs[k] * var**(valuation + k).

    Attributes:
        var: formal variable tag
        valuation: exponent of the first stored coefficient
        coeffs: stored coefficients; leading and trailing zeros are trimmed
        order: exponents >= order are unknown; None for an exact series
        precision_loss: set when operands with different finite orders were mixed
    """

    var: str
    valuation: int = 0
    coeffs: tuple[Any, ...] = ()
    order: int | None = None
    precision_loss: bool = field(default=False)

    def __post_init__(self) -> None:
        """Trim zeros and terms at or beyond the truncation order."""
        values = list(self.coeffs)
        val = self.valuation
        if self.order is not None:
            values = values[: max(self.order - val, 0)]
        while values and _is_zero(values[0]):
            values.pop(0)
            val += 1
        while values and _is_zero(values[-1]):
            values.pop()
        if not values:
            val = 0 if self.order is None else self.order
        object.__setattr__(self, "coeffs", tuple(values))
        object.__setattr__(self, "valuation", val)

    @classmethod
    def from_terms(
        cls, var: str, terms: dict[int, Any], order: int | None = None
    ) -> TruncSeries:
        """Build from an {exponent: coeff} mapping."""
        nonzero = {k: v for k, v in terms.items() if not _is_zero(v)}
        if not nonzero:
            return cls(var, 0, (), order)
        low, high = min(nonzero), max(nonzero)
        coeffs = tuple(nonzero.get(k, Fraction(0)) for k in range(low, high + 1))
        return cls(var, low, coeffs, order)

    @classmethod
    def constant(cls, var: str, value: Any, order: int | None = None) -> TruncSeries:
        """Constant series."""
        return cls(var, 0, (value,), order)

    @classmethod
    def monomial(cls, var: str, exponent: int, coeff: Any = 1, order: int | None = None) -> TruncSeries:
        """coeff * var**exponent."""
        return cls(var, exponent, (coeff,), order)

    @classmethod
    def zero(cls, var: str, order: int | None = None) -> TruncSeries:
        """Zero series."""
        return cls(var, 0, (), order)

    def is_zero(self) -> bool:
        """Whether every known coefficient vanishes."""
        return not self.coeffs

    @property
    def top(self) -> int:
        """One past the highest stored exponent."""
        return self.valuation + len(self.coeffs)

    def coeff(self, k: int) -> Any:
        """Coefficient of var**k.

        Raises:
            ParameterError: k is at or beyond the truncation order
        """
        if self.order is not None and k >= self.order:
            raise ParameterError(f"coefficient {k} of {self.var}-series known only below {self.order}")
        idx = k - self.valuation
        return self.coeffs[idx] if 0 <= idx < len(self.coeffs) else Fraction(0)

    def terms(self) -> Iterator[tuple[int, Any]]:
        """Iterate over nonzero (exponent, coeff) pairs."""
        for idx, c in enumerate(self.coeffs):
            if not _is_zero(c):
                yield self.valuation + idx, c

    def _check(self, other: TruncSeries) -> None:
        if other.var != self.var:
            raise VariableMismatchError(f"series in {self.var} combined with series in {other.var}")

    def _lift(self, other: object) -> TruncSeries:
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        return TruncSeries.constant(self.var, other)

    def __add__(self, other: object) -> TruncSeries:
        """Sum; the order is the smaller one."""
        rhs = self._lift(other)
        order = _min_order(self.order, rhs.order)
        loss = (
            self.precision_loss
            or rhs.precision_loss
            or (self.order is not None and rhs.order is not None and self.order != rhs.order)
        )
        terms: dict[int, Any] = dict(self.terms())
        for k, c in rhs.terms():
            terms[k] = terms[k] + c if k in terms else c
        result = TruncSeries.from_terms(self.var, terms, order)
        return result.with_loss(loss)

    def __radd__(self, other: object) -> TruncSeries:
        """Reflected sum."""
        return self + other

    def __neg__(self) -> TruncSeries:
        """Negation."""
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other: object) -> TruncSeries:
        """Difference."""
        return self + (-self._lift(other))

    def __rsub__(self, other: object) -> TruncSeries:
        """Reflected difference."""
        return (-self) + other

    def __mul__(self, other: object) -> TruncSeries:
        """Cauchy product, or coefficient-wise product with a scalar."""
        if not isinstance(other, TruncSeries):
            return self.map_coeffs(lambda c: c * other)
        self._check(other)
        # an exact zero factor imposes no truncation
        orders = []
        if self.order is not None and not (other.order is None and other.is_zero()):
            orders.append(self.order + other.valuation)
        if other.order is not None and not (self.order is None and self.is_zero()):
            orders.append(other.order + self.valuation)
        order = min(orders) if orders else None
        terms: dict[int, Any] = {}
        for i, a in self.terms():
            for j, b in other.terms():
                k = i + j
                if order is not None and k >= order:
                    continue
                prod = a * b
                terms[k] = terms[k] + prod if k in terms else prod
        result = TruncSeries.from_terms(self.var, terms, order)
        return result.with_loss(self.precision_loss or other.precision_loss)

    def __rmul__(self, other: object) -> TruncSeries:
        """Scalar times series, coefficients multiplied on the left."""
        return self.map_coeffs(lambda c: other * c)

    def __truediv__(self, other: object) -> TruncSeries:
        """Division by a scalar or by a series with invertible leading coefficient."""
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        if isinstance(other, AlgNum):
            inv: Any = other.inverse()
        else:
            inv = 1 / Fraction(other)  # type: ignore[arg-type]
        return self.map_coeffs(lambda c: c * inv)

    def __pow__(self, exponent: int) -> TruncSeries:
        """Integer power."""
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncSeries.constant(self.var, Fraction(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def with_loss(self, loss: bool) -> TruncSeries:  # noqa: FBT001
        """Copy with the precision-loss flag set to `loss`."""
        if loss == self.precision_loss:
            return self
        return TruncSeries(self.var, self.valuation, self.coeffs, self.order, loss)

    def map_coeffs(self, fn: Callable[[Any], Any]) -> TruncSeries:
        """Apply a function to every coefficient."""
        return TruncSeries(
            self.var,
            self.valuation,
            tuple(fn(c) for c in self.coeffs),
            self.order,
            self.precision_loss,
        )

    def truncate(self, order: int) -> TruncSeries:
        """Drop terms of exponent >= order."""
        return TruncSeries(
            self.var, self.valuation, self.coeffs, _min_order(self.order, order), self.precision_loss
        )

    def shift(self, n: int) -> TruncSeries:
        """Multiply by var**n."""
        return TruncSeries(
            self.var,
            self.valuation + n,
            self.coeffs,
            None if self.order is None else self.order + n,
            self.precision_loss,
        )

    def principal_part(self) -> TruncSeries:
        """Sum of the strictly negative-exponent terms, as an exact series.

        Raises:
            ParameterError: the series is truncated below exponent 0
        """
        if self.order is not None and self.order < 0:
            raise ParameterError("principal part unknown: series truncated below exponent 0")
        return TruncSeries.from_terms(self.var, {k: c for k, c in self.terms() if k < 0})

    def analytic_part(self) -> TruncSeries:
        """Sum of the nonnegative-exponent terms, keeping the truncation order."""
        return TruncSeries.from_terms(
            self.var, {k: c for k, c in self.terms() if k >= 0}, self.order
        )

    def inverse(self) -> TruncSeries:
        """Multiplicative inverse; the leading coefficient must be a unit in Q(i, sqrt2).

        Raises:
            ZeroDivisionError: zero series
            ParameterError: exact series with infinitely many inverse terms
        """
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero {self.var}-series")
        lead = self.coeffs[0]
        lead_inv: Any
        if lead == 1:
            lead_inv = Fraction(1)
        elif isinstance(lead, AlgNum):
            lead_inv = lead.inverse()
        elif isinstance(lead, int | Fraction):
            lead_inv = 1 / Fraction(lead)
        else:
            raise ParameterError(f"leading coefficient {lead} is not invertible")
        normalized = self.shift(-self.valuation) * lead_inv
        if normalized.order is None:
            if len(normalized.coeffs) == 1:
                return TruncSeries.monomial(self.var, -self.valuation, lead_inv)
            raise ParameterError("inverse of an exact non-monomial series needs a truncation order")
        return normalized.pow_rational(Fraction(-1)).shift(-self.valuation) * lead_inv

    def pow_rational(self, alpha: Fraction | int, order: int | None = None) -> TruncSeries:
        """(1 + u)**alpha by the generalized binomial series.

        Args:
            alpha: rational exponent
            order: truncation order, required when the series is exact
        Returns:
            the power, truncated at the smaller of `order` and the series order
        Raises:
            ParameterError: constant term different from 1, or no truncation order available
        """
        alpha = Fraction(alpha)
        if self.valuation < 0 or self.coeff(0) != 1:
            raise ParameterError("pow_rational needs a series with constant term 1")
        target = _min_order(self.order, order)
        if target is None:
            if alpha.denominator == 1 and alpha >= 0:
                return self ** int(alpha)
            raise ParameterError("pow_rational of an exact series needs a truncation order")
        tail = (self - 1).truncate(target)
        result = TruncSeries.constant(self.var, Fraction(1), target)
        power = TruncSeries.constant(self.var, Fraction(1), target)
        for k in range(1, max(target, 1)):
            power = (power * tail).truncate(target)
            if power.is_zero():
                break
            result = result + power * binomial(alpha, k)
        return result.with_loss(self.precision_loss)

    def compose(self, sub: TruncSeries, order: int) -> TruncSeries:
        """Formal composition self(sub) truncated at `order` in sub's variable.

        Args:
            sub: substituted series with zero constant term
            order: requested truncation order of the result
        Returns:
            series in sub's variable; its order is also capped by self.order * val(sub)
        Raises:
            ParameterError: sub has a nonzero constant term, or self has negative exponents
        """
        if self.valuation < 0 and self.coeffs:
            raise ParameterError("compose needs a Taylor series")
        if sub.coeffs and sub.valuation < 1:
            raise ParameterError("compose needs a substitution with zero constant term")
        target = order
        if self.order is not None and sub.coeffs:
            target = min(target, self.order * sub.valuation)
        result = TruncSeries.zero(sub.var, target)
        power = TruncSeries.constant(sub.var, Fraction(1), target)
        for k in range(self.top):
            c = self.coeff(k)
            if not _is_zero(c):
                result = result + power * c
            power = (power * sub).truncate(target)
            if power.is_zero():
                break
        logger.debug("composed %s-series into %s up to order %d", self.var, sub.var, target)
        return result

    def evaluate(self, value: Any, convert: Callable[[Any], Any]) -> Any:
        """Numeric value of the stored terms at `value`."""
        return sum((convert(c) * value**k for k, c in self.terms()), start=0)

    def __eq__(self, other: object) -> bool:
        """Equal variable, order and coefficients."""
        if not isinstance(other, TruncSeries):
            if self.order is None and len(self.coeffs) <= 1 and self.valuation == 0:
                return bool(self.coeff(0) == other)
            return NotImplemented
        return (
            self.var == other.var
            and self.order == other.order
            and self.valuation == other.valuation
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        """Hash on the defining data."""
        return hash((self.var, self.valuation, self.coeffs, self.order))

    def __str__(self) -> str:
        """Readable form."""
        body = " + ".join(f"({c})*{self.var}^{k}" for k, c in self.terms()) or "0"
        return body if self.order is None else f"{body} + O({self.var}^{self.order})"


@dataclass(frozen=True)
class Mat2Series:
    """2x2 matrix of truncated series in a common variable."""

    a11: TruncSeries
    a12: TruncSeries
    a21: TruncSeries
    a22: TruncSeries

    @classmethod
    def identity(cls, var: str, order: int | None = None) -> Mat2Series:
        """Identity matrix."""
        one = TruncSeries.constant(var, Fraction(1), order)
        zero = TruncSeries.zero(var, order)
        return cls(one, zero, zero, one)

    @classmethod
    def sigma3(cls, var: str, order: int | None = None) -> Mat2Series:
        """Pauli matrix diag(1, -1)."""
        return cls.diagonal(
            TruncSeries.constant(var, Fraction(1), order),
            TruncSeries.constant(var, Fraction(-1), order),
        )

    @classmethod
    def diagonal(cls, d1: TruncSeries, d2: TruncSeries) -> Mat2Series:
        """diag(d1, d2)."""
        zero = TruncSeries.zero(d1.var, _min_order(d1.order, d2.order))
        return cls(d1, zero, zero, d2)

    @classmethod
    def offdiagonal(cls, upper: TruncSeries, lower: TruncSeries) -> Mat2Series:
        """[[0, upper], [lower, 0]]."""
        zero = TruncSeries.zero(upper.var, _min_order(upper.order, lower.order))
        return cls(zero, upper, lower, zero)

    @property
    def var(self) -> str:
        """Formal variable."""
        return self.a11.var

    def entries(self) -> tuple[TruncSeries, TruncSeries, TruncSeries, TruncSeries]:
        """Entries in row-major order."""
        return self.a11, self.a12, self.a21, self.a22

    def map_entries(self, fn: Callable[[TruncSeries], TruncSeries]) -> Mat2Series:
        """Apply a function to every entry."""
        return Mat2Series(*(fn(e) for e in self.entries()))

    def __add__(self, other: Mat2Series) -> Mat2Series:
        """Sum."""
        return Mat2Series(*(a + b for a, b in zip(self.entries(), other.entries(), strict=True)))

    def __neg__(self) -> Mat2Series:
        """Negation."""
        return self.map_entries(lambda e: -e)

    def __sub__(self, other: Mat2Series) -> Mat2Series:
        """Difference."""
        return self + (-other)

    def __mul__(self, other: object) -> Mat2Series:
        """Matrix product, or entry-wise product with a scalar or series."""
        if not isinstance(other, Mat2Series):
            return self.map_entries(lambda e: e * other)
        return Mat2Series(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __rmul__(self, other: object) -> Mat2Series:
        """Scalar times matrix."""
        return self.map_entries(lambda e: other * e)

    def det(self) -> TruncSeries:
        """Determinant."""
        return self.a11 * self.a22 - self.a12 * self.a21

    def inverse(self) -> Mat2Series:
        """Inverse via adjugate over determinant."""
        det_inv = self.det().inverse()
        return Mat2Series(
            self.a22 * det_inv, -self.a12 * det_inv, -self.a21 * det_inv, self.a11 * det_inv
        )

    def truncate(self, order: int) -> Mat2Series:
        """Truncate every entry."""
        return self.map_entries(lambda e: e.truncate(order))

    def principal_part(self) -> Mat2Series:
        """Entry-wise principal part."""
        return self.map_entries(TruncSeries.principal_part)

    def analytic_part(self) -> Mat2Series:
        """Entry-wise analytic part."""
        return self.map_entries(TruncSeries.analytic_part)

    def scale_offdiagonal(self, upper: Any, lower: Any) -> Mat2Series:
        """Multiply the (1,2) entry by `upper` and the (2,1) entry by `lower`.

        This is conjugation D^-1 M D by D = diag(d1, d2) with upper = d2/d1.
        """
        return Mat2Series(self.a11, self.a12 * upper, self.a21 * lower, self.a22)

    def is_diagonal(self) -> bool:
        """Whether both off-diagonal entries vanish."""
        return self.a12.is_zero() and self.a21.is_zero()

    def is_offdiagonal(self) -> bool:
        """Whether both diagonal entries vanish."""
        return self.a11.is_zero() and self.a22.is_zero()

    def is_zero(self) -> bool:
        """Whether every entry vanishes."""
        return all(e.is_zero() for e in self.entries())

    @property
    def valuation(self) -> int:
        """Lowest exponent among nonzero entries (0 for the zero matrix)."""
        return min((e.valuation for e in self.entries() if not e.is_zero()), default=0)

    def coeff(self, k: int) -> tuple[Any, Any, Any, Any]:
        """Coefficient matrix of var**k, row-major."""
        c11, c12, c21, c22 = (e.coeff(k) for e in self.entries())
        return c11, c12, c21, c22


def series_from_polys(var: str, coeffs: Iterable[Any], order: int | None = None) -> TruncSeries:
    """Series sum_k coeffs[k] * var**k."""
    return TruncSeries(var, 0, tuple(coeffs), order)
