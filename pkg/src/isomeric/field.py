"""Exact arithmetic in the Gaussian rationals Q(i).

Real values are carried as plain ``gmpy2.mpq`` so the common case stays on the
fast C path; :class:`GaussRational` only appears when the imaginary part is
nonzero, and every operation collapses back to ``mpq`` when it can.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussRational", "I", "coerce", "conj", "fmt_coeff", "is_real", "mpq"]

_MPQ = type(mpq(0))


class GaussRational:
    """a + b*i with a, b rational and b != 0 (enforced by :func:`_make`)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)

    def __add__(self, other):
        if isinstance(other, GaussRational):
            return _make(self.re + other.re, self.im + other.im)
        try:
            return _make(self.re + other, self.im)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return _make(self.re - other.re, self.im - other.im)
        try:
            return _make(self.re - other, self.im)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return _make(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            return _make(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        try:
            return _make(self.re * other, self.im * other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            n = other.re * other.re + other.im * other.im
            return _make(
                (self.re * other.re + self.im * other.im) / n,
                (self.im * other.re - self.re * other.im) / n,
            )
        try:
            return _make(self.re / other, self.im / other)
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        n = self.re * self.re + self.im * self.im
        return _make(other * self.re / n, -other * self.im / n)

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        out, base = mpq(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        return fmt_coeff(self)


def _make(re, im):
    if im == 0:
        return re
    return GaussRational(re, im)


I = GaussRational(0, 1)


def coerce(x):
    """Bring ints, Fractions, mpq and GaussRational values into the field."""
    if isinstance(x, (_MPQ, GaussRational)):
        return x
    if isinstance(x, complex):
        raise TypeError("floating point complex values are not exact")
    if isinstance(x, (int, Fraction, Rational)):
        return mpq(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(i)")


def is_real(x) -> bool:
    return not isinstance(x, GaussRational)


def conj(x):
    if isinstance(x, GaussRational):
        return GaussRational(x.re, -x.im)
    return x


def _fmt_q(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fmt_coeff(x) -> str:
    """Render an exact coefficient, e.g. ``3/2``, ``-i``, ``1/2+3*i``."""
    if not isinstance(x, GaussRational):
        return _fmt_q(x)
    re, im = x.re, x.im
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{_fmt_q(im)}*i"
    if re == 0:
        return ims
    sep = "" if ims.startswith("-") else "+"
    return f"{_fmt_q(re)}{sep}{ims}"
