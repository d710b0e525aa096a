"""Scalar kernel: exact rationals and arbitrary-precision big-floats.

Every quantity in this package lives in one of two regimes:

* ``exact-rational`` -- :class:`fractions.Fraction` over unbounded integers;
  add/sub/mul/div/neg/abs/compare are error-free.
* ``big-float`` -- an mpmath ``mpf`` carrying an explicit decimal precision;
  operations are rounded at that precision (binary precision is chosen by
  mpmath so results are correct to the stated digits or better).

The default big-float precision is 60 decimal digits.  Coefficients of the
test polynomials reach 1e18 while pseudozero contour levels go down to 1e-18,
so 60 digits leaves over 20 guard digits; callers can raise it per call or
globally.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

from .errors import ArgumentError, DomainError

DEFAULT_DIGITS = 60

_default_digits = DEFAULT_DIGITS

_LOG10_2 = math.log10(2)


def get_default_digits() -> int:
    """Current global default precision (decimal digits) for big-floats."""
    return _default_digits


def set_default_digits(digits: int) -> None:
    global _default_digits
    if digits < 5:
        raise ArgumentError(f"precision must be at least 5 digits, got {digits}")
    _default_digits = digits


@contextmanager
def default_digits(digits: int):
    """Temporarily override the global default precision."""
    global _default_digits
    old = _default_digits
    set_default_digits(digits)
    try:
        yield
    finally:
        _default_digits = old


def resolve_digits(digits=None) -> int:
    if digits is None:
        return _default_digits
    if digits < 5:
        raise ArgumentError(f"precision must be at least 5 digits, got {digits}")
    return int(digits)


def working(digits: int):
    """Context manager running mpmath at the given decimal precision.

    mpmath's precision lives on the global context, so big-float work must be
    serialized; the service layer keeps all computation on one thread.
    """
    return mp.workdps(int(digits))


ExactLike = Union[int, str, Fraction]
ScalarLike = Union[int, str, float, Fraction, mpmath.mpf, "Scalar"]


def as_fraction(x) -> Fraction:
    """Coerce to an exact Fraction; floats are rejected as ambiguous."""
    if isinstance(x, Scalar):
        if not x.is_exact:
            raise ArgumentError("big-float Scalar is not exact; convert explicitly")
        return x.value
    if isinstance(x, bool):
        raise ArgumentError("bool is not a number")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise ArgumentError(
            "float input is ambiguous in the exact regime; pass a string, "
            "Fraction, or int"
        )
    raise ArgumentError(f"cannot interpret {type(x).__name__} as an exact rational")


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a finite mpf (binary floats are dyadic)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise DomainError("cannot convert non-finite big-float to a rational")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def to_mpf(x, digits=None):
    """Round any scalar-like value to an mpf at the given decimal precision."""
    d = resolve_digits(digits)
    if isinstance(x, Scalar):
        x = x.value
    with working(d):
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / mp.mpf(x.denominator)
        if isinstance(x, str):
            f = Fraction(x)
            return mp.mpf(f.numerator) / mp.mpf(f.denominator)
        return mp.mpf(x)


class Scalar:
    """A number tagged with its regime: exact rational or big-float.

    Mixed-regime arithmetic promotes to big-float at the largest precision
    involved. Construct with :meth:`exact` or :meth:`big`.
    """

    __slots__ = ("value", "precision")

    def __init__(self, value, precision=None):
        if isinstance(value, Fraction):
            object.__setattr__(self, "value", value)
            object.__setattr__(self, "precision", None)
        elif isinstance(value, mpmath.mpf):
            object.__setattr__(self, "value", value)
            object.__setattr__(self, "precision", resolve_digits(precision))
        else:
            raise ArgumentError(
                "Scalar wraps Fraction or mpf; use Scalar.exact / Scalar.big"
            )

    @classmethod
    def exact(cls, x) -> "Scalar":
        return cls(as_fraction(x))

    @classmethod
    def big(cls, x, digits=None) -> "Scalar":
        d = resolve_digits(digits)
        return cls(to_mpf(x, d), d)

    @property
    def regime(self) -> str:
        return "exact-rational" if self.precision is None else "big-float"

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def to_big(self, digits=None) -> "Scalar":
        return Scalar.big(self.value, digits)

    def as_fraction(self) -> Fraction:
        """Exact rational value; a big-float converts exactly (it is dyadic)."""
        if self.is_exact:
            return self.value
        return mpf_to_fraction(self.value)

    def __float__(self) -> float:
        return float(self.value)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other))
        if isinstance(other, mpmath.mpf):
            return Scalar(other, get_default_digits())
        if isinstance(other, float):
            return Scalar(Fraction(other))  # binary floats are exact dyadics
        return None

    def _binop(self, other, op):
        rhs = Scalar._lift(other)
        if rhs is None:
            return NotImplemented
        if self.is_exact and rhs.is_exact:
            return Scalar(op(self.value, rhs.value))
        d = max(p for p in (self.precision, rhs.precision) if p is not None)
        with working(d):
            a = to_mpf(self.value, d) if self.is_exact else self.value
            b = to_mpf(rhs.value, d) if rhs.is_exact else rhs.value
            return Scalar(op(a, b), d)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if self.is_exact:
            return Scalar(self.value**n)
        with working(self.precision):
            return Scalar(self.value**n, self.precision)

    def __neg__(self):
        if self.is_exact:
            return Scalar(-self.value)
        # mpmath unary ops round at the ambient precision; pin it
        with working(self.precision):
            return Scalar(-self.value, self.precision)

    def __abs__(self):
        if self.is_exact:
            return Scalar(abs(self.value))
        with working(self.precision):
            return Scalar(abs(self.value), self.precision)

    # -- comparisons (exact even across regimes) ----------------------------

    def _cmp_value(self, other):
        rhs = Scalar._lift(other)
        if rhs is None:
            return None, None
        a = self.value if self.is_exact else mpf_to_fraction(self.value)
        b = rhs.value if rhs.is_exact else mpf_to_fraction(rhs.value)
        return a, b

    def __eq__(self, other):
        a, b = self._cmp_value(other)
        return NotImplemented if a is None else a == b

    def __lt__(self, other):
        a, b = self._cmp_value(other)
        return NotImplemented if a is None else a < b

    def __le__(self, other):
        a, b = self._cmp_value(other)
        return NotImplemented if a is None else a <= b

    def __gt__(self, other):
        a, b = self._cmp_value(other)
        return NotImplemented if a is None else a > b

    def __ge__(self, other):
        a, b = self._cmp_value(other)
        return NotImplemented if a is None else a >= b

    def __hash__(self):
        if self.is_exact:
            return hash(self.value)
        return hash(mpf_to_fraction(self.value))

    def __repr__(self):
        if self.is_exact:
            return f"Scalar({self.value!r})"
        return f"Scalar({mpmath.nstr(self.value, 12)}, digits={self.precision})"


class ComplexScalar:
    """A complex number as a pair of Scalars sharing one regime."""

    __slots__ = ("re", "im")

    def __init__(self, re: Scalar, im: Scalar):
        if not isinstance(re, Scalar) or not isinstance(im, Scalar):
            raise ArgumentError("ComplexScalar takes two Scalars")
        if re.regime != im.regime:
            raise ArgumentError("real and imaginary parts must share a regime")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def exact(cls, re, im=0) -> "ComplexScalar":
        return cls(Scalar.exact(re), Scalar.exact(im))

    @classmethod
    def big(cls, re, im=0, digits=None) -> "ComplexScalar":
        d = resolve_digits(digits)
        return cls(Scalar.big(re, d), Scalar.big(im, d))

    @property
    def regime(self) -> str:
        return self.re.regime

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, ComplexScalar):
            return NotImplemented
        return ComplexScalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        if not isinstance(other, ComplexScalar):
            return NotImplemented
        return ComplexScalar(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if not isinstance(other, ComplexScalar):
            return NotImplemented
        return ComplexScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __eq__(self, other):
        if not isinstance(other, ComplexScalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def magnitude_squared(self) -> Scalar:
        """re^2 + im^2, exact in the rational regime."""
        return self.re * self.re + self.im * self.im

    def magnitude(self, digits=None) -> Scalar:
        d = resolve_digits(digits if digits is not None else self.re.precision)
        with working(d):
            m2 = to_mpf(self.magnitude_squared().value, d)
            return Scalar(mp.sqrt(m2), d)

    def to_mpc(self, digits=None):
        d = resolve_digits(digits if digits is not None else self.re.precision)
        with working(d):
            return mp.mpc(to_mpf(self.re.value, d), to_mpf(self.im.value, d))

    def __repr__(self):
        return f"ComplexScalar({self.re!r}, {self.im!r})"


def to_mpc(z, digits=None):
    """Round any complex-like value to an mpc at the given precision."""
    d = resolve_digits(digits)
    if isinstance(z, ComplexScalar):
        return z.to_mpc(d)
    with working(d):
        if isinstance(z, tuple) and len(z) == 2:
            return mp.mpc(to_mpf(z[0], d), to_mpf(z[1], d))
        if isinstance(z, complex):
            return mp.mpc(z)
        if isinstance(z, (mpmath.mpc,)):
            return mp.mpc(z)
        return mp.mpc(to_mpf(z, d))


def _int_log10(n: int) -> float:
    """log10 of a positive integer via bit length plus a 64-bit mantissa.

    Never converts the full integer to a float, so factorial-scale values
    cannot overflow; absolute error is far below 1e-6.
    """
    bl = n.bit_length()
    if bl <= 64:
        return math.log10(n)
    shift = bl - 64
    return shift * _LOG10_2 + math.log10(n >> shift)


def log10_abs(s) -> float:
    """log10(|s|) as a double, accurate to at least 6 significant digits.

    Works far outside machine-float range (big integers, tiny rationals,
    big-floats with huge exponents). Raises DomainError at s = 0.
    """
    if isinstance(s, Scalar):
        s = s.value
    if isinstance(s, mpmath.mpf):
        if s == 0:
            raise DomainError("log10_abs is undefined at 0")
        return log10_abs(mpf_to_fraction(s))
    if isinstance(s, float):
        if s == 0.0:
            raise DomainError("log10_abs is undefined at 0")
        s = Fraction(s)
    if isinstance(s, int):
        s = Fraction(s)
    if not isinstance(s, Fraction):
        raise ArgumentError(f"cannot take log10_abs of {type(s).__name__}")
    if s == 0:
        raise DomainError("log10_abs is undefined at 0")
    return _int_log10(abs(s.numerator)) - _int_log10(s.denominator)
