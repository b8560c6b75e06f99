"""Exact scalars in Q(i).

Every coefficient in the package, including the deformation parameter q,
is a :class:`GaussianRational`: a complex number whose real and imaginary
parts are arbitrary-precision rationals.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["GaussianRational", "Scalar", "as_scalar", "abs_sq", "abs_approx"]

Scalar = Union["GaussianRational", int, Fraction]

_RATIONAL = r"\d+(?:/\d+)?"
_LITERAL = re.compile(
    rf"""^\s*
    (?:
        (?P<re>[+-]?\s*{_RATIONAL})
        (?:\s*(?P<isign>[+-])\s*(?P<im>{_RATIONAL})?\s*i)?
      |
        (?P<only_sign>[+-])?\s*(?P<only_im>{_RATIONAL})?\s*i
    )\s*$""",
    re.VERBOSE,
)


def _frac(text: str | None, default: int = 1) -> Fraction:
    if text is None:
        return Fraction(default)
    return Fraction(text.replace(" ", ""))


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts.

    Stored as integers ``(a + b*i) / d`` with ``d > 0`` and
    ``gcd(a, b, d) = 1``, so each operation costs one gcd.  Instances are
    immutable and hash like the equal :class:`Fraction` when the imaginary
    part vanishes, so ``GaussianRational(3) == 3`` and both may serve as the
    same dict key.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: Rational | int | str = 0, im: Rational | int | str = 0):
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        _set(self, re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Read a literal such as ``3/5+4/5i``, ``-2i`` or ``7``."""
        m = _LITERAL.match(text)
        if m is None:
            raise ValueError(f"invalid scalar literal: {text!r}")
        if m.group("re") is not None:
            re_part = _frac(m.group("re"))
            if m.group("isign") is None:
                return cls(re_part)
            im_part = _frac(m.group("im"))
            return cls(re_part, -im_part if m.group("isign") == "-" else im_part)
        im_part = _frac(m.group("only_im"))
        return cls(0, -im_part if m.group("only_sign") == "-" else im_part)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return _make(self._a + other._a, self._b + other._b, d1)
        return _make(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return _make(self._a - other._a, self._b - other._b, d1)
        return _make(self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, e = self._a, self._b, other._a, other._b
        if not b and not e:
            return _make(a * c, 0, self._d * other._d)
        return _make(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return _raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> GaussianRational:
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        # d / (a + bi) = d (a - bi) / (a^2 + b^2)
        return _make(d * a, -d * b, n)

    def conjugate(self) -> GaussianRational:
        return _raw(self._a, -self._b, self._d)

    # -- modulus ------------------------------------------------------------

    def abs_sq(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def abs_approx(self) -> float:
        """Modulus as a float; exact whenever ``abs_sq`` is a rational square."""
        s = self.abs_sq()
        rn, rd = math.isqrt(s.numerator), math.isqrt(s.denominator)
        if rn * rn == s.numerator and rd * rd == s.denominator:
            return rn / rd
        return math.sqrt(s)

    def is_unit(self) -> bool:
        return self._a * self._a + self._b * self._b == self._d * self._d

    def is_real(self) -> bool:
        return not self._b

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if not self._b:
            return hash(Fraction(self._a, self._d))
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self._b:
            raise TypeError("cannot convert non-real GaussianRational to float")
        return float(self.re)

    # -- rendering ------------------------------------------------------------

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        im_abs = abs(im)
        im_txt = "i" if im_abs == 1 else f"{im_abs}i"
        if not re:
            return ("-" if im < 0 else "") + im_txt
        return f"{re}{'-' if im < 0 else '+'}{im_txt}"

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


_set_slot_a = GaussianRational._a.__set__
_set_slot_b = GaussianRational._b.__set__
_set_slot_d = GaussianRational._d.__set__
_new = object.__new__


def _set(obj: GaussianRational, a: int, b: int, d: int) -> None:
    g = math.gcd(a, b, d)
    if g != 1:
        a, b, d = a // g, b // g, d // g
    if d < 0:
        a, b, d = -a, -b, -d
    _set_slot_a(obj, a)
    _set_slot_b(obj, b)
    _set_slot_d(obj, d)


def _raw(a: int, b: int, d: int) -> GaussianRational:
    obj = _new(GaussianRational)
    _set_slot_a(obj, a)
    _set_slot_b(obj, b)
    _set_slot_d(obj, d)
    return obj


def _make(a: int, b: int, d: int) -> GaussianRational:
    obj = _new(GaussianRational)
    _set(obj, a, b, d)
    return obj


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return _raw(x, 0, 1)
    if isinstance(x, Fraction):
        return _raw(x.numerator, 0, x.denominator)
    return NotImplemented


def as_scalar(x: Scalar | str) -> GaussianRational:
    """Coerce ints, fractions and literals to :class:`GaussianRational`."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise TypeError(f"not an exact scalar: {x!r} (floating values are not accepted)")


def abs_sq(x: Scalar) -> Fraction:
    return as_scalar(x).abs_sq()


def abs_approx(x: Scalar) -> float:
    return as_scalar(x).abs_approx()


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
