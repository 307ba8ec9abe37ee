"""Exact scalars: Gaussian rationals and Laurent polynomials in hbar."""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "I", "ONE", "ZERO", "as_fraction", "RATIONAL_TYPES"]

#: exact rationals accepted without conversion; gmpy2.mpq is the storage type
RATIONAL_TYPES = (int, Fraction, type(mpq()))


def as_fraction(x):
    """Convert an int, Fraction, mpq or rational string to the exact storage type."""
    if type(x) is _MPQ:
        return x
    if isinstance(x, int):
        return mpq(int(x))
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except ValueError:
            raise ValueError(f"invalid rational literal {x!r}") from None
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


_MPQ = type(mpq())


class GaussianRational:
    """An element re + im*i of Q(i), stored as two reduced gmpy2 rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def _new(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        return cls(x)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, RATIONAL_TYPES):
            return self.im == 0 and self.re == as_fraction(other)
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, RATIONAL_TYPES):
                return _new(self.re + as_fraction(other), self.im)
            return NotImplemented
        return _new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, RATIONAL_TYPES):
                return _new(self.re - as_fraction(other), self.im)
            return NotImplemented
        return _new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, RATIONAL_TYPES):
                other = as_fraction(other)
                return _new(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return _new(a * c, _FZERO)
            if not c:
                return _new(_FZERO, a * d)
            return _new(a * c, a * d)
        if not a:
            if not d:
                return _new(_FZERO, b * c)
            if not c:
                return _new(-(b * d), _FZERO)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """Return |z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n):
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


_new = GaussianRational._new
_FZERO = mpq(0)

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gaussian_arith(a, b, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two Gaussian rationals.

    Division by zero raises ``ZeroDivisionError``.
    """
    a = GaussianRational.coerce(a)
    b = GaussianRational.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
