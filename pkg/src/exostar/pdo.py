"""Formal pseudodifferential operators with polynomial coefficients.

A :class:`PDO` is a finite sum of terms a_d(q) o D^d, d in Z, with D = d/dq.
Coefficients stand to the left of the derivatives; this is the normal form
used for equality and printing.
"""

import math
from fractions import Fraction

from .poly import HScalar, PhaseFn, QPoly, _Sparse
from .scalars import GaussianRational
from .star import (
    ProductKind,
    exotic_product,
    moyal_product,
    phi_pullback,
    poisson,
)

__all__ = [
    "PDO",
    "D",
    "pdo_compose",
    "pdo_commutator",
    "weyl_quantize",
    "exotic_quantize",
    "quantize",
    "homomorphism_residual",
    "mobius_equivariance_residual",
    "laplacian",
    "dilation",
]


def gbinom(d, s):
    """Generalized binomial d(d-1)...(d-s+1)/s! for any integer d and s >= 0."""
    num = 1
    for j in range(s):
        num *= d - j
    return Fraction(num, math.factorial(s))


class PDO(_Sparse):
    __slots__ = ()
    laurent = True
    var = "D"

    @staticmethod
    def _coerce_coeff(v):
        return QPoly.coerce(v)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        v = QPoly.coerce(x)
        return cls._raw({0: v} if v else {})

    @classmethod
    def term(cls, d=0, q=0, h=0, coeff=1):
        """coeff * q^q * hbar^h o D^d."""
        g = GaussianRational.coerce(coeff)
        if not g:
            return cls._raw({})
        return cls._raw({d: QPoly._raw({q: HScalar._raw({h: g})})})

    def terms(self):
        """Yield flattened (d, q, h, coeff) tuples, unordered."""
        for d, f in self._c.items():
            for q, s in f.items():
                for h, g in s.items():
                    yield d, q, h, g

    def compose(self, other):
        other = PDO.coerce(other)
        out = {}
        for d, a in self._c.items():
            for e, b in other._c.items():
                # D^d o b = sum_s C(d, s) b^(s) D^(d - s)
                s = 0
                bs = b
                while bs:
                    c = gbinom(d, s)
                    if c:
                        k = d + e - s
                        t = (a * bs).scale(c)
                        out[k] = out[k] + t if k in out else t
                    if d >= 0 and s >= d:
                        break
                    s += 1
                    bs = bs.derivative()
        return PDO(out)

    def __mul__(self, other):
        try:
            other = PDO.coerce(other)
        except TypeError:
            return NotImplemented
        return self.compose(other)

    def __rmul__(self, other):
        try:
            other = PDO.coerce(other)
        except TypeError:
            return NotImplemented
        return other.compose(self)

    def inverse(self):
        """Inverse of a single term c * D^d with constant invertible c."""
        if len(self._c) != 1:
            raise ZeroDivisionError("only single-term operators are inverted")
        (d, a), = self._c.items()
        if set(a.exponents()) != {0}:
            raise ZeroDivisionError("coefficient depends on q")
        return PDO({-d: a.inverse()})


def D(k=1):
    return PDO.term(d=k)


def pdo_compose(A, B):
    return PDO.coerce(A).compose(B)


def pdo_commutator(A, B):
    A, B = PDO.coerce(A), PDO.coerce(B)
    return A.compose(B) - B.compose(A)


def laplacian():
    return D(2)


def dilation():
    """2q D + 1."""
    return PDO.term(d=1, q=1, coeff=2) + PDO.term()


_IH = HScalar({1: GaussianRational(0, 1)})


def weyl_quantize(F):
    """Weyl-symmetric quantization p -> i hbar D, q -> q, p^-1 -> (i hbar)^-1 D^-1.

    On a monomial: p^m q^n -> 2^-n sum_j C(n, j) q^j o (i hbar D)^m o q^(n-j).
    """
    F = PhaseFn.coerce(F)
    out = PDO()
    qpow = {}

    def qp(k):
        if k not in qpow:
            qpow[k] = PDO.term(q=k)
        return qpow[k]

    for m, f in F.items():
        pm = PDO({m: QPoly.coerce(_IH**m)})
        for n, c in f.items():
            acc = PDO()
            for j in range(n + 1):
                acc = acc + qp(j).compose(pm).compose(qp(n - j)).scale(math.comb(n, j))
            out = out + acc.scale(QPoly.coerce(c.scale(Fraction(1, 2**n))))
    return out


def exotic_quantize(F):
    """Quantization intertwining the exotic product: Weyl quantization of the Phi pullback."""
    return weyl_quantize(phi_pullback(F))


def quantize(F, kind):
    if ProductKind.parse(kind) is ProductKind.MOYAL:
        return weyl_quantize(F)
    return exotic_quantize(F)


def homomorphism_residual(F, G, kind):
    kind = ProductKind.parse(kind)
    if kind is ProductKind.MOYAL:
        q, prod = weyl_quantize, moyal_product
    else:
        q, prod = exotic_quantize, exotic_product
    return q(prod(F, G)) - q(F).compose(q(G))


_MOBIUS_MONOMIALS = {(1, 0), (1, 1), (1, 2)}
_INV_IH = HScalar({-1: GaussianRational(0, -1)})


def mobius_equivariance_residual(X, F):
    """Quantized {X, F} minus [X^, F^]/(i hbar); X must lie in span{p, pq, pq^2}."""
    X = PhaseFn.coerce(X)
    for p, q, h, _ in X.terms():
        if (p, q) not in _MOBIUS_MONOMIALS or h:
            raise ValueError(
                "X must be a combination of p, p*q, p*q^2; "
                f"found term p^{p}*q^{q}*hbar^{h}"
            )
    lhs = exotic_quantize(poisson(X, F))
    rhs = pdo_commutator(exotic_quantize(X), exotic_quantize(F)).scale(_INV_IH)
    return lhs - rhs

