"""
Scalars for the product-vector toolkit.

Two coefficient domains share one interface:

- ``EXACT``: Gaussian rationals a + bi with a, b arbitrary-precision
  ``fractions.Fraction`` values. Every operation is exact.
- ``FLOAT``: Python ``complex`` (double precision). Values entering the domain
  are checked for finiteness; overflow raises instead of producing Inf.

Algebra routines (polynomials, determinants, subspaces) take a field object and
only use ``field.zero``, ``field.one``, ``field.coerce``, ``field.is_zero`` and
the ordinary arithmetic operators, so they run unchanged in either domain.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Any, Union

from .util_helper import ProdVecError

ComplexF = complex
Rational = Union[int, Fraction]


class ScalarOverflowError(ProdVecError, OverflowError):
    """A value does not fit (or no longer fits) in double precision."""
    kind = "validation"


class DomainError(ProdVecError):
    """Mixed or unsupported coefficient domains / dimensions."""
    kind = "domain"


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ScalarOverflowError(f"non-finite float {value!r} has no exact value")
        # shortest decimal form, so 0.1 means 1/10 rather than its binary expansion
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {type(value).__name__} as a rational")


class GaussianRational:
    """Exact complex number re + im·i with rational parts."""

    __slots__ = ("_re", "_im")

    def __init__(self, re: Any = 0, im: Any = 0) -> None:
        self._re = _to_fraction(re)
        self._im = _to_fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, value: Any) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        return cls(value)

    @classmethod
    def from_complex_exact(cls, value: complex) -> "GaussianRational":
        """Binary-exact image of a float complex (no decimal rounding)."""
        if not cmath.isfinite(value):
            raise ScalarOverflowError(f"non-finite value {value!r}")
        return cls(Fraction(value.real), Fraction(value.imag))

    def __repr__(self) -> str:
        return f"GaussianRational({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self) -> str:
        if self._im == 0:
            return str(self._re)
        if self._re == 0:
            return f"{self._im}i"
        sign = "+" if self._im > 0 else "-"
        return f"{self._re}{sign}{abs(self._im)}i"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self) -> bool:
        return self._re != 0 or self._im != 0

    def _other(self, other: Any) -> "GaussianRational | None":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(other)
        return None

    def __add__(self, other: Any) -> "GaussianRational":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "GaussianRational":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other: Any) -> "GaussianRational":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o._re - self._re, o._im - self._im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self._re, -self._im)

    def __mul__(self, other: Any) -> "GaussianRational":
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def abs2(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other: Any) -> "GaussianRational":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "GaussianRational":
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def __complex__(self) -> complex:
        return InoNumericHelper.approx(self)

    def __abs__(self) -> float:
        return abs(InoNumericHelper.approx(self))


class ExactField:
    """Gaussian rationals."""

    name = "exact"
    exact = True

    def __init__(self) -> None:
        self.zero = GaussianRational(0)
        self.one = GaussianRational(1)

    def coerce(self, value: Any) -> GaussianRational:
        return GaussianRational.coerce(value)

    def conj(self, value: GaussianRational) -> GaussianRational:
        return value.conjugate()

    def is_zero(self, value: GaussianRational, scale: float = 1.0) -> bool:
        return not value

    def magnitude(self, value: GaussianRational) -> float:
        return abs(value)

    def __repr__(self) -> str:
        return "EXACT"


class FloatField:
    """Double-precision complex numbers."""

    name = "float"
    exact = False

    def __init__(self, zero_rel: float = 1e-12) -> None:
        self.zero = 0j
        self.one = 1 + 0j
        self.zero_rel = zero_rel

    def coerce(self, value: Any) -> complex:
        if isinstance(value, GaussianRational):
            return InoNumericHelper.approx(value)
        if isinstance(value, Fraction):
            value = InoNumericHelper.approx(GaussianRational(value))
        z = complex(value)
        if not cmath.isfinite(z):
            raise ScalarOverflowError(f"non-finite value {z!r} in the float domain")
        return z

    def conj(self, value: complex) -> complex:
        return value.conjugate()

    def is_zero(self, value: complex, scale: float = 1.0) -> bool:
        return abs(value) <= self.zero_rel * scale

    def magnitude(self, value: complex) -> float:
        return abs(value)

    def __repr__(self) -> str:
        return "FLOAT"


EXACT = ExactField()
FLOAT = FloatField()


class InoNumericHelper:
    @staticmethod
    def field_named(name: str):
        if name == "exact":
            return EXACT
        if name == "float":
            return FLOAT
        raise DomainError(f"unknown coefficient domain {name!r}; use 'exact' or 'float'")

    @staticmethod
    def field_of(value: Any):
        return EXACT if isinstance(value, GaussianRational) else FLOAT

    @staticmethod
    def conj(x: Any) -> Any:
        """Complex conjugate in either domain; integers and fractions are their own conjugate."""
        if isinstance(x, GaussianRational):
            return x.conjugate()
        if isinstance(x, (int, Fraction)):
            return x
        return complex(x).conjugate()

    @staticmethod
    def approx(x: GaussianRational) -> complex:
        """Nearest double-precision complex (Fraction -> float is correctly rounded)."""
        try:
            return complex(float(x.re), float(x.im))
        except OverflowError as e:
            raise ScalarOverflowError(f"rational magnitude outside float range: {e}") from e

    # -----------------------
    # JSON scalar encoding
    # -----------------------
    @staticmethod
    def encode_scalar(x: Any) -> list:
        """``[re, im]``; exact parts as ``"p/q"`` strings, float parts as floats."""
        if isinstance(x, GaussianRational):
            return [f"{x.re.numerator}/{x.re.denominator}", f"{x.im.numerator}/{x.im.denominator}"]
        z = FLOAT.coerce(x)
        return [z.real, z.imag]

    @staticmethod
    def decode_scalar(value: Any, field=EXACT) -> Any:
        """Reads ``[re, im]`` (or a bare real) into the given field."""
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ProdVecError(f"scalar must be [re, im], got {value!r}")
            re_part, im_part = value
        else:
            re_part, im_part = value, 0
        if field.exact:
            return GaussianRational(_to_fraction(re_part), _to_fraction(im_part))

        def _part(p: Any) -> float:
            return float(_to_fraction(p)) if isinstance(p, str) else float(p)

        return FLOAT.coerce(complex(_part(re_part), _part(im_part)))

    @staticmethod
    def snap(z: complex, max_denominator: int = 1_000_000) -> GaussianRational:
        """Closest Gaussian rational with bounded denominators (used before an exact check)."""
        return GaussianRational(
            Fraction(z.real).limit_denominator(max_denominator),
            Fraction(z.imag).limit_denominator(max_denominator),
        )
