"""Sparse Laurent/polynomial containers over exact scalars.

Three nested layers share one implementation:

* ``HScalar``  -- Laurent polynomials in hbar with Gaussian-rational coefficients,
* ``QPoly``    -- polynomials in q with ``HScalar`` coefficients,
* ``PhaseFn``  -- Laurent polynomials in p with ``QPoly`` coefficients.

All values are immutable; zero coefficients are never stored, so equality is
plain structural equality of the underlying dicts. Constructors accept nested
dicts, e.g. ``PhaseFn({-1: {1: 3}})`` is 3 q/p.
"""

import math
from fractions import Fraction

from .scalars import RATIONAL_TYPES, GaussianRational

__all__ = ["HScalar", "QPoly", "PhaseFn", "P", "Q", "HBAR", "IH"]


class _Sparse:
    __slots__ = ("_c", "_hash")

    #: whether negative exponents are allowed
    laurent = True
    var = "x"

    def __init__(self, data=None):
        c = {}
        if data:
            items = data.items() if isinstance(data, dict) else data
            coerce = self._coerce_coeff
            for e, v in items:
                if not isinstance(e, int):
                    raise TypeError(f"{self.var}-exponent must be int, got {e!r}")
                if e < 0 and not self.laurent:
                    raise ValueError(f"negative {self.var}-exponent {e} not allowed")
                v = coerce(v)
                if e in c:
                    v = c[e] + v
                if v:
                    c[e] = v
                else:
                    c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @staticmethod
    def _coerce_coeff(v):
        raise NotImplementedError

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        v = cls._coerce_coeff(x)
        return cls._raw({0: v} if v else {})

    @classmethod
    def monomial(cls, e, coeff=1):
        return cls({e: coeff})

    # -- container protocol -------------------------------------------------

    def items(self):
        return self._c.items()

    def exponents(self):
        return self._c.keys()

    def __getitem__(self, e):
        return self._c.get(e, self._coerce_coeff(0))

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if type(other) is type(self):
            return self._c == other._c
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{e}: {v!r}" for e, v in sorted(self._c.items()))
        return f"{type(self).__name__}({{{inner}}})"

    # -- ring operations ----------------------------------------------------

    def __neg__(self):
        return self._raw({e: -v for e, v in self._c.items()})

    def __add__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            if e in c:
                s = c[e] + v
                if s:
                    c[e] = s
                else:
                    del c[e]
            else:
                c[e] = v
        return self._raw(c)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                v = v1 * v2
                if e in c:
                    c[e] = c[e] + v
                else:
                    c[e] = v
        return self._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def scale(self, s):
        """Multiply every coefficient by ``s`` (an element of the coefficient ring)."""
        if isinstance(s, RATIONAL_TYPES):
            return self._scale_rational(s)
        s = self._coerce_coeff(s)
        out = {}
        if s:
            for e, v in self._c.items():
                w = v * s
                if w:
                    out[e] = w
        return self._raw(out)

    def _scale_rational(self, r):
        if not r:
            return self._raw({})
        if r == 1:
            return self
        return self._raw({
            e: v * r if isinstance(v, GaussianRational) else v._scale_rational(r)
            for e, v in self._c.items()
        })

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_monomial(self):
        return len(self._c) == 1

    def inverse(self):
        """Inverse of a single monomial c*x^e with invertible c."""
        if len(self._c) != 1:
            raise ZeroDivisionError(f"{self!r} is not an invertible monomial")
        (e, v), = self._c.items()
        if e and not self.laurent:
            raise ZeroDivisionError(f"{self.var}^{e} is not invertible")
        return self._raw({-e: v.inverse()})

    def __truediv__(self, other):
        other = self.coerce(other)
        return self * other.inverse()

    def degree(self):
        """Largest exponent, or -inf for zero."""
        return max(self._c) if self._c else -math.inf

    def valuation(self):
        return min(self._c) if self._c else math.inf


class HScalar(_Sparse):
    """Laurent polynomial in the formal parameter hbar over Q(i)."""

    __slots__ = ()
    laurent = True
    var = "hbar"

    @staticmethod
    def _coerce_coeff(v):
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, (*RATIONAL_TYPES, str)):
            return GaussianRational(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to a Gaussian rational")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if isinstance(x, dict):
            return cls(x)
        if isinstance(x, (QPoly, PhaseFn)):
            raise TypeError("cannot coerce a polynomial down to HScalar")
        v = cls._coerce_coeff(x)
        return cls._raw({0: v} if v else {})

    def constant(self):
        """Return the hbar^0 coefficient."""
        return self[0]


class QPoly(_Sparse):
    """Polynomial in q with ``HScalar`` coefficients."""

    __slots__ = ()
    laurent = False
    var = "q"

    @staticmethod
    def _coerce_coeff(v):
        return HScalar.coerce(v)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if isinstance(x, dict):
            return cls(x)
        if isinstance(x, PhaseFn):
            if set(x.exponents()) - {0}:
                raise TypeError("PhaseFn depends on p; cannot coerce to QPoly")
            return x[0]
        v = HScalar.coerce(x)
        return cls._raw({0: v} if v else {})

    def derivative(self, n=1):
        """n-th derivative in q."""
        if n == 0:
            return self
        # e(e-1)...(e-n+1) q^(e-n); zero exactly when e < n
        out = {}
        for e, v in self._c.items():
            if e >= n:
                out[e - n] = v._scale_rational(math.perm(e, n))
        return self._raw(out)


class PhaseFn(_Sparse):
    """Element of the algebra of Laurent polynomials in p with q-polynomial coefficients.

    ``PhaseFn({m: f_m})`` stands for the sum of p^m f_m(q).
    """

    __slots__ = ()
    laurent = True
    var = "p"

    @staticmethod
    def _coerce_coeff(v):
        return QPoly.coerce(v)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if isinstance(x, dict):
            return cls(x)
        v = QPoly.coerce(x)
        return cls._raw({0: v} if v else {})

    @classmethod
    def term(cls, p=0, q=0, h=0, coeff=1):
        """The single term coeff * p^p * q^q * hbar^h."""
        g = GaussianRational.coerce(coeff)
        if not g:
            return cls._raw({})
        return cls._raw({p: QPoly._raw({q: HScalar._raw({h: g})})})

    @classmethod
    def from_terms(cls, terms):
        """Build from an iterable of (p, q, h, coeff)."""
        nested = {}
        for p, q, h, c in terms:
            c = GaussianRational.coerce(c)
            if q < 0:
                raise ValueError(f"negative q-exponent {q} not allowed")
            hs = nested.setdefault(p, {}).setdefault(q, {})
            hs[h] = hs.get(h, GaussianRational(0)) + c
        return cls({p: QPoly({q: HScalar(hs) for q, hs in qs.items()}) for p, qs in nested.items()})

    def terms(self):
        """Yield flattened (p, q, h, coeff) tuples, unordered."""
        for p, f in self._c.items():
            for q, s in f._c.items():
                for h, g in s._c.items():
                    yield p, q, h, g

    def component(self, m):
        """The q-coefficient of p^m."""
        return self[m]

    def q_degree(self):
        return max((f.degree() for f in self._c.values()), default=-math.inf)

    def shift_p(self, k):
        """Multiply by p^k."""
        return self._raw({e + k: v for e, v in self._c.items()})

    def partial(self, var, n=1):
        """n-th partial derivative in ``var`` ('p' or 'q')."""
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        if var == "q":
            out = {}
            for e, f in self._c.items():
                df = f.derivative(n)
                if df:
                    out[e] = df
            return self._raw(out)
        if var == "p":
            if n == 0:
                return self
            out = {}
            for e, f in self._c.items():
                w = math.prod(range(e - n + 1, e + 1))
                if w:
                    out[e - n] = f._scale_rational(w)
            return self._raw(out)
        raise ValueError(f"unknown variable {var!r}")

    def truncate_hbar(self, max_order):
        """Drop every term whose hbar-exponent exceeds ``max_order``."""
        return PhaseFn.from_terms(t for t in self.terms() if t[2] <= max_order)


def qpoly_derivative(f, n=1):
    return QPoly.coerce(f).derivative(n)


def phasefn_partial(F, var, n=1):
    return PhaseFn.coerce(F).partial(var, n)


P = PhaseFn.term(p=1)
Q = PhaseFn.term(q=1)
HBAR = HScalar({1: 1})
#: i*hbar, the deformation parameter in both products
IH = HScalar({1: GaussianRational(0, 1)})
