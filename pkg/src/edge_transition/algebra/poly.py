"""Dense univariate and sparse bivariate polynomials over Q or Q(i, sqrt2)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import mpmath

from edge_transition.algebra.algnum import AlgNum
from edge_transition.errors import DivisionRemainderError, FieldExtensionError, ParameterError

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Mapping

Coeff = Fraction | AlgNum
Scalar = int | Fraction | AlgNum


def _norm_coeff(value: Scalar) -> Coeff:
    if isinstance(value, AlgNum):
        return value.a if value.is_rational() else value
    return Fraction(value)


def to_rational(value: Coeff) -> Fraction:
    """Rational value of a coefficient, raising if it has an i or sqrt2 part."""
    if isinstance(value, AlgNum):
        return value.to_fraction()
    return value


def coeff_to_mp(value: Coeff) -> Any:
    """Convert a coefficient to an mpmath number at the current working precision."""
    if isinstance(value, AlgNum):
        if value.is_rational():
            return coeff_to_mp(value.a)
        sqrt2 = mpmath.sqrt(2)
        re_ = coeff_to_mp(value.a) + coeff_to_mp(value.b) * sqrt2
        im_ = coeff_to_mp(value.c) + coeff_to_mp(value.d) * sqrt2
        return mpmath.mpc(re_, im_)
    return mpmath.mpf(value.numerator) / value.denominator


def coeff_to_complex(value: Coeff) -> complex:
    """Floating embedding of a coefficient."""
    if isinstance(value, AlgNum):
        return value.to_complex()
    return complex(float(value))


def _converter(value: Any, *, rational: bool) -> Callable[[Coeff], Any]:
    if isinstance(value, mpmath.mpf | mpmath.mpc):
        return coeff_to_mp
    if rational and not isinstance(value, complex):
        return lambda c: float(to_rational(c))
    return coeff_to_complex


class Poly1:
    """Dense polynomial in one variable.

    Coefficients are stored lowest degree first with trailing zeros trimmed;
    the zero polynomial has degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = "x"):
        """Build from coefficients, lowest degree first."""
        values = [_norm_coeff(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs: tuple[Coeff, ...] = tuple(values)
        self.var = var

    @classmethod
    def constant(cls, value: Scalar, var: str = "x") -> Poly1:
        """Constant polynomial."""
        return cls([value], var)

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1, var: str = "x") -> Poly1:
        """coeff * var**degree."""
        return cls([0] * degree + [coeff], var)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        """Whether the polynomial vanishes identically."""
        return not self.coeffs

    def __getitem__(self, k: int) -> Coeff:
        """Coefficient of var**k."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _check(self, other: Poly1) -> None:
        if other.var != self.var and not (other.is_zero() or self.is_zero()):
            raise ParameterError(f"variable mismatch {self.var} vs {other.var}")

    def _lift(self, other: object) -> Poly1 | None:
        if isinstance(other, Poly1):
            self._check(other)
            return other
        if isinstance(other, int | Fraction | AlgNum):
            return Poly1.constant(other, self.var)
        return None

    def __add__(self, other: object) -> Poly1:
        """Sum."""
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        n = max(len(self.coeffs), len(rhs.coeffs))
        return Poly1([self[k] + rhs[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> Poly1:
        """Negation."""
        return Poly1([-c for c in self.coeffs], self.var)

    def __sub__(self, other: object) -> Poly1:
        """Difference."""
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Poly1:
        """Reflected difference."""
        return (-self) + other

    def __mul__(self, other: object) -> Poly1:
        """Product."""
        if isinstance(other, int | Fraction | AlgNum):
            return Poly1([c * other for c in self.coeffs], self.var)
        if not isinstance(other, Poly1):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly1((), self.var)
        out: list[Coeff] = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly1(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Poly1:
        """Division by a scalar."""
        if isinstance(other, AlgNum):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> Poly1:
        """Nonnegative integer power."""
        result = Poly1.constant(1, self.var)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self) -> Poly1:
        """Formal derivative."""
        return Poly1([k * self.coeffs[k] for k in range(1, len(self.coeffs))], self.var)

    def __eq__(self, other: object) -> bool:
        """Exact equality, also against constants."""
        if isinstance(other, int | Fraction | AlgNum):
            other = Poly1.constant(other, self.var)
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        """Hash on coefficients."""
        return hash(self.coeffs)

    def is_rational(self) -> bool:
        """Whether every coefficient lies in Q."""
        return all(not isinstance(c, AlgNum) for c in self.coeffs)

    def evaluate(self, value: Any) -> Any:
        """Horner evaluation at a float, complex or mpmath value."""
        convert = _converter(value, rational=self.is_rational())
        result: Any = 0
        for c in reversed(self.coeffs):
            result = result * value + convert(c)
        return result

    def __repr__(self) -> str:
        """Debug form."""
        return f"Poly1({self})"

    def __str__(self) -> str:
        """Readable form, lowest degree first."""
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms)


class BivarPoly:
    """Sparse polynomial in x and y.

    Terms are kept in a mapping (dx, dy) -> coefficient that never stores zeros.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        """Build from a {(dx, dy): coeff} mapping."""
        cleaned: dict[tuple[int, int], Coeff] = {}
        for key, value in (terms or {}).items():
            c = _norm_coeff(value)
            if c != 0:
                cleaned[key] = c
        self._terms = cleaned

    @classmethod
    def constant(cls, value: Scalar) -> BivarPoly:
        """Constant polynomial."""
        return cls({(0, 0): value})

    @classmethod
    def x(cls) -> BivarPoly:
        """The polynomial x."""
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BivarPoly:
        """The polynomial y."""
        return cls({(0, 1): 1})

    @classmethod
    def from_x(cls, poly: Poly1) -> BivarPoly:
        """Embed p(x)."""
        return cls({(k, 0): c for k, c in enumerate(poly.coeffs)})

    @classmethod
    def from_y(cls, poly: Poly1) -> BivarPoly:
        """Embed p(y)."""
        return cls({(0, k): c for k, c in enumerate(poly.coeffs)})

    @property
    def terms(self) -> dict[tuple[int, int], Coeff]:
        """Copy of the term mapping."""
        return dict(self._terms)

    def __getitem__(self, key: tuple[int, int]) -> Coeff:
        """Coefficient of x**dx y**dy."""
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        """Whether the polynomial vanishes identically."""
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Total degree, -1 for zero."""
        return max((dx + dy for dx, dy in self._terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, int], Coeff]]:
        """Terms in graded order: total degree ascending, then dx descending."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), -kv[0][0]))

    def __iter__(self) -> Iterator[tuple[tuple[int, int], Coeff]]:
        """Iterate over terms in graded order."""
        return iter(self.sorted_terms())

    def _lift(self, other: object) -> BivarPoly | None:
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, int | Fraction | AlgNum):
            return BivarPoly.constant(other)
        return None

    def __add__(self, other: object) -> BivarPoly:
        """Sum."""
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        out: dict[tuple[int, int], Coeff] = dict(self._terms)
        for key, value in rhs._terms.items():
            out[key] = out.get(key, Fraction(0)) + value
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BivarPoly:
        """Negation."""
        return BivarPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: object) -> BivarPoly:
        """Difference."""
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> BivarPoly:
        """Reflected difference."""
        return (-self) + other

    def __mul__(self, other: object) -> BivarPoly:
        """Product."""
        if isinstance(other, int | Fraction | AlgNum):
            return BivarPoly({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out: dict[tuple[int, int], Coeff] = {}
        for (ax, ay), a in self._terms.items():
            for (bx, by), b in other._terms.items():
                key = (ax + bx, ay + by)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BivarPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> BivarPoly:
        """Division by a scalar."""
        if isinstance(other, AlgNum):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> BivarPoly:
        """Nonnegative integer power."""
        result = BivarPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        """Exact equality, also against constants."""
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        """Hash on sorted terms."""
        return hash(tuple(self.sorted_terms()))

    def swap(self) -> BivarPoly:
        """p(y, x)."""
        return BivarPoly({(dy, dx): v for (dx, dy), v in self._terms.items()})

    def is_symmetric(self) -> bool:
        """Whether p(x, y) = p(y, x)."""
        return self == self.swap()

    def on_diagonal(self) -> Poly1:
        """p(x, x) as a polynomial in x."""
        out: dict[int, Coeff] = {}
        for (dx, dy), v in self._terms.items():
            out[dx + dy] = out.get(dx + dy, Fraction(0)) + v
        if not out:
            return Poly1()
        return Poly1([out.get(k, Fraction(0)) for k in range(max(out) + 1)])

    def map_coeffs(self, fn: Callable[[Coeff], Scalar]) -> BivarPoly:
        """Apply a function to every coefficient."""
        return BivarPoly({k: fn(v) for k, v in self._terms.items()})

    def is_rational(self) -> bool:
        """Whether every coefficient lies in Q."""
        return all(not isinstance(v, AlgNum) for v in self._terms.values())

    def to_rational(self) -> BivarPoly:
        """Same polynomial with coefficients checked to be rational.

        Raises:
            FieldExtensionError: a coefficient has an i or sqrt2 part
        """
        try:
            return self.map_coeffs(to_rational)
        except FieldExtensionError as err:
            raise FieldExtensionError(f"non-rational coefficient in {self}") from err

    def homogeneous_components(self) -> dict[int, BivarPoly]:
        """Split into homogeneous parts keyed by total degree."""
        parts: dict[int, dict[tuple[int, int], Coeff]] = {}
        for key, value in self._terms.items():
            parts.setdefault(key[0] + key[1], {})[key] = value
        return {d: BivarPoly(t) for d, t in parts.items()}

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        values = [to_rational(v) for v in self._terms.values()]
        if not values:
            return Fraction(1)
        num = math.gcd(*(v.numerator for v in values))
        den = math.lcm(*(v.denominator for v in values))
        return Fraction(num, den)

    def evaluate(self, x: Any, y: Any) -> Any:
        """Numeric value at (x, y); mpmath inputs give mpmath outputs."""
        sample = y if isinstance(y, mpmath.mpf | mpmath.mpc | complex) else x
        convert = _converter(sample, rational=self.is_rational())
        total: Any = 0
        for (dx, dy), v in self._terms.items():
            total += convert(v) * x**dx * y**dy
        return total

    def to_records(self) -> list[dict[str, int]]:
        """JSON records {dx, dy, num, den} in graded order; coefficients must be rational."""
        return [
            {"dx": dx, "dy": dy, "num": q.numerator, "den": q.denominator}
            for (dx, dy), v in self.sorted_terms()
            for q in (to_rational(v),)
        ]

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, Any]]) -> BivarPoly:
        """Inverse of `to_records`; also accepts {dx, dy, coeff} with a canonical AlgNum string."""
        terms: dict[tuple[int, int], Coeff] = {}
        for rec in records:
            key = (int(rec["dx"]), int(rec["dy"]))
            if "coeff" in rec:
                value: Coeff = _norm_coeff(AlgNum.parse(str(rec["coeff"])))
            else:
                value = Fraction(int(rec["num"]), int(rec["den"]))
            terms[key] = terms.get(key, Fraction(0)) + value
        return cls(terms)

    def to_coeff_records(self) -> list[dict[str, Any]]:
        """JSON records {dx, dy, coeff} with canonical AlgNum strings."""
        return [
            {"dx": dx, "dy": dy, "coeff": AlgNum.of(v).canonical()}
            for (dx, dy), v in self.sorted_terms()
        ]

    def __repr__(self) -> str:
        """Debug form."""
        return f"BivarPoly({self})"

    def __str__(self) -> str:
        """Readable form in graded order."""
        if self.is_zero():
            return "0"
        parts = []
        for (dx, dy), v in self.sorted_terms():
            mono = "*".join(
                f"{var}^{e}" if e > 1 else var for var, e in (("x", dx), ("y", dy)) if e
            )
            parts.append(f"({v})*{mono}" if mono else f"({v})")
        return " + ".join(parts)


def exact_divide_x_minus_y(
    p: BivarPoly, *, j: int | None = None, component: str | None = None
) -> BivarPoly:
    """Return q with p = (x - y) q.

    Args:
        p: polynomial to divide
        j: expansion order reported on failure
        component: basis label reported on failure
    Returns:
        the exact quotient
    Raises:
        DivisionRemainderError: p(y, y) is not identically zero
    """
    remainder = BivarPoly.from_y(p.on_diagonal())
    if not remainder.is_zero():
        raise DivisionRemainderError(remainder, j=j, component=component)
    quotient: dict[tuple[int, int], Coeff] = {}
    for d, part in p.homogeneous_components().items():
        # coefficient of x^i y^(d-i) in (x - y) q is q_(i-1) - q_i
        q_prev: Coeff = Fraction(0)
        for i in range(d):
            q_i = q_prev - part[(i, d - i)]
            quotient[(i, d - 1 - i)] = q_i
            q_prev = q_i
    return BivarPoly(quotient)
