"""Exact arithmetic in the field Q(i, sqrt2)."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Self

from edge_transition.errors import FieldExtensionError, ParameterError

if TYPE_CHECKING:
    from collections.abc import Iterator

SQRT2 = math.sqrt(2.0)

Rational = int | Fraction

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def _q2_mul(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> tuple[Fraction, Fraction]:
    """(a + b sqrt2)(c + d sqrt2) in Q(sqrt2)."""
    return a * c + 2 * b * d, a * d + b * c


def _q2_inv(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    norm = a * a - 2 * b * b
    if norm == 0:
        raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
    return a / norm, -b / norm


def _fmt_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class AlgNum:
    """Element a + b*sqrt2 + c*i + d*i*sqrt2 with rational components.

    The basis {1, sqrt2, i, i*sqrt2} makes the representation unique, so the
    dataclass equality is the field equality.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        """Normalize components to Fraction."""
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))

    @classmethod
    def of(cls, value: AlgNum | Rational) -> AlgNum:
        """Coerce a rational or an AlgNum."""
        if isinstance(value, AlgNum):
            return value
        return cls(Fraction(value))

    @classmethod
    def sqrt2(cls) -> AlgNum:
        """The element sqrt2."""
        return cls(b=Fraction(1))

    @classmethod
    def imag_unit(cls) -> AlgNum:
        """The element i."""
        return cls(c=Fraction(1))

    @property
    def real_part(self) -> tuple[Fraction, Fraction]:
        """Real part as an element (a, b) of Q(sqrt2)."""
        return self.a, self.b

    @property
    def imag_part(self) -> tuple[Fraction, Fraction]:
        """Imaginary part as an element (c, d) of Q(sqrt2)."""
        return self.c, self.d

    def __iter__(self) -> Iterator[Fraction]:
        """Iterate over the four rational components."""
        return iter((self.a, self.b, self.c, self.d))

    def is_zero(self) -> bool:
        """Whether all components vanish."""
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        """Whether the value lies in Q."""
        return not (self.b or self.c or self.d)

    def to_fraction(self) -> Fraction:
        """Return the rational value, raising if the value is irrational or complex."""
        if not self.is_rational():
            raise FieldExtensionError(f"{self} is not rational")
        return self.a

    def to_complex(self) -> complex:
        """Floating embedding with sqrt2 > 0."""
        return complex(
            float(self.a) + float(self.b) * SQRT2, float(self.c) + float(self.d) * SQRT2
        )

    def __add__(self, other: object) -> AlgNum:
        """Sum."""
        if isinstance(other, int | Fraction):
            return AlgNum(self.a + other, self.b, self.c, self.d)
        if not isinstance(other, AlgNum):
            return NotImplemented
        return AlgNum(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self) -> AlgNum:
        """Negation."""
        return AlgNum(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: object) -> AlgNum:
        """Difference."""
        if isinstance(other, int | Fraction | AlgNum):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: object) -> AlgNum:
        """Reflected difference."""
        if isinstance(other, int | Fraction):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other: object) -> AlgNum:
        """Product."""
        if isinstance(other, int | Fraction):
            return AlgNum(self.a * other, self.b * other, self.c * other, self.d * other)
        if not isinstance(other, AlgNum):
            return NotImplemented
        pr, pi = _q2_mul(self.a, self.b, other.a, other.b)
        qr, qi = _q2_mul(self.c, self.d, other.c, other.d)
        xr, xi = _q2_mul(self.a, self.b, other.c, other.d)
        yr, yi = _q2_mul(self.c, self.d, other.a, other.b)
        return AlgNum(pr - qr, pi - qi, xr + yr, xi + yi)

    __rmul__ = __mul__

    def inverse(self) -> AlgNum:
        """Multiplicative inverse.

        Raises:
            ZeroDivisionError: for the zero element
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # 1/(p + iq) = (p - iq)/(p^2 + q^2) with p, q in Q(sqrt2)
        p2 = _q2_mul(self.a, self.b, self.a, self.b)
        q2 = _q2_mul(self.c, self.d, self.c, self.d)
        n_inv = _q2_inv(p2[0] + q2[0], p2[1] + q2[1])
        re_ = _q2_mul(self.a, self.b, *n_inv)
        im_ = _q2_mul(-self.c, -self.d, *n_inv)
        return AlgNum(re_[0], re_[1], im_[0], im_[1])

    def __truediv__(self, other: object) -> AlgNum:
        """Quotient."""
        if isinstance(other, int | Fraction):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, AlgNum):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> AlgNum:
        """Reflected quotient."""
        if isinstance(other, int | Fraction):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, exponent: int) -> AlgNum:
        """Integer power."""
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = AlgNum(Fraction(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> AlgNum:
        """Complex conjugate (i -> -i, sqrt2 fixed)."""
        return AlgNum(self.a, self.b, -self.c, -self.d)

    def galois_conjugate(self) -> AlgNum:
        """Image under sqrt2 -> -sqrt2."""
        return AlgNum(self.a, -self.b, self.c, -self.d)

    def norm(self) -> Fraction:
        """Field norm to Q: the Q(sqrt2)-norm of |x|^2."""
        p2 = _q2_mul(self.a, self.b, self.a, self.b)
        q2 = _q2_mul(self.c, self.d, self.c, self.d)
        s, t = p2[0] + q2[0], p2[1] + q2[1]
        return s * s - 2 * t * t

    def __eq__(self, other: object) -> bool:
        """Field equality, also against rationals."""
        if isinstance(other, int | Fraction):
            return self.is_rational() and self.a == other
        if not isinstance(other, AlgNum):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self) -> int:
        """Hash consistent with rational equality."""
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    def canonical(self) -> str:
        """Canonical text form "a + b*r2 + c*i + d*i*r2" with reduced fractions."""
        parts = [_fmt_fraction(self.a)]
        for value, basis in ((self.b, "r2"), (self.c, "i"), (self.d, "i*r2")):
            sign = "-" if value < 0 else "+"
            parts.append(f"{sign} {_fmt_fraction(abs(value))}*{basis}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> AlgNum:
        """Parse the canonical form, or any sum of terms like "-5/24*r2", "i*r2", "3".

        Raises:
            ParameterError: malformed input
        """
        compact = text.replace(" ", "")
        if not compact:
            raise ParameterError("empty AlgNum literal")
        components = [Fraction(0)] * 4
        position = 0
        for match in _TERM_RE.finditer(compact):
            if match.start() != position:
                raise ParameterError(f"malformed AlgNum literal {text!r}")
            position = match.end()
            coeff = Fraction(-1 if match.group(1) == "-" else 1)
            has_r2 = has_i = False
            for factor in match.group(2).split("*"):
                if factor == "r2":
                    has_r2 = True
                elif factor == "i":
                    has_i = True
                else:
                    try:
                        coeff *= Fraction(factor)
                    except ValueError as err:
                        raise ParameterError(f"malformed AlgNum literal {text!r}") from err
            components[2 * has_i + has_r2] += coeff
        if position != len(compact):
            raise ParameterError(f"malformed AlgNum literal {text!r}")
        return cls(*components)

    def __str__(self) -> str:
        """Readable form omitting zero components."""
        parts: list[str] = []
        for value, basis in ((self.a, ""), (self.b, "r2"), (self.c, "i"), (self.d, "i*r2")):
            if not value:
                continue
            magnitude = abs(value)
            if basis and magnitude == 1:
                body = basis
            elif basis:
                body = f"{_fmt_fraction(magnitude)}*{basis}"
            else:
                body = _fmt_fraction(magnitude)
            if not parts:
                parts.append(f"-{body}" if value < 0 else body)
            else:
                parts.append(f"{'-' if value < 0 else '+'} {body}")
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        """Debug form."""
        return f"AlgNum({self})"


ALG_ZERO = AlgNum()
ALG_ONE = AlgNum(Fraction(1))
I_UNIT = AlgNum.imag_unit()
R2 = AlgNum.sqrt2()


@dataclass(frozen=True, slots=True)
class ScaledConstant:
    """Symbolic constant coeff * 2**two_exponent * h**h_exponent.

    Powers of 2 and of the formal scaling parameter h are carried with rational
    exponents, so products such as nu^(2/3) * 2^(-2/3) cancel exactly.
    """

    coeff: AlgNum
    two_exponent: Fraction = Fraction(0)
    h_exponent: Fraction = Fraction(0)

    @classmethod
    def of(cls, coeff: AlgNum | Rational, two_exponent: Rational = 0, h_exponent: Rational = 0) -> Self:
        """Build from loose values."""
        return cls(AlgNum.of(coeff), Fraction(two_exponent), Fraction(h_exponent))

    def __mul__(self, other: object) -> ScaledConstant:
        """Product."""
        if isinstance(other, int | Fraction | AlgNum):
            return ScaledConstant(self.coeff * other, self.two_exponent, self.h_exponent)
        if not isinstance(other, ScaledConstant):
            return NotImplemented
        return ScaledConstant(
            self.coeff * other.coeff,
            self.two_exponent + other.two_exponent,
            self.h_exponent + other.h_exponent,
        )

    __rmul__ = __mul__

    def inverse(self) -> ScaledConstant:
        """Multiplicative inverse."""
        return ScaledConstant(self.coeff.inverse(), -self.two_exponent, -self.h_exponent)

    def __truediv__(self, other: object) -> ScaledConstant:
        """Quotient."""
        if isinstance(other, ScaledConstant):
            return self * other.inverse()
        if isinstance(other, int | Fraction | AlgNum):
            return self * AlgNum.of(other).inverse()
        return NotImplemented

    def to_algnum(self) -> AlgNum:
        """Materialize in Q(i, sqrt2).

        Raises:
            FieldExtensionError: a power of h survives, or the power of 2 is not a half-integer
        """
        if self.h_exponent != 0:
            raise FieldExtensionError(f"h^{self.h_exponent} did not cancel")
        doubled = 2 * self.two_exponent
        if doubled.denominator != 1:
            raise FieldExtensionError(f"2^{self.two_exponent} does not lie in Q(i, sqrt2)")
        whole, half = divmod(doubled.numerator, 2)
        value = self.coeff * (Fraction(2) ** whole)
        return value * R2 if half else value

    def __str__(self) -> str:
        """Readable form."""
        return f"({self.coeff}) * 2^({self.two_exponent}) * h^({self.h_exponent})"
