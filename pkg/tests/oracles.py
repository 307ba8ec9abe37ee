"""Independent sympy routes and hypothesis strategies shared by the tests."""

from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from exostar.poly import HScalar, PhaseFn, QPoly
from exostar.scalars import GaussianRational

# positive symbols let sqrt(2*p)**2 simplify back to 2*p
p, q, hbar = sp.symbols("p q hbar", positive=True)
p1, q1, p2, q2 = sp.symbols("p1 q1 p2 q2", positive=True)


def to_sympy(F):
    """PhaseFn / QPoly / PDO-free object -> sympy expression in p, q, hbar."""
    F = PhaseFn.coerce(F)
    out = sp.Integer(0)
    for a, b, h, c in F.terms():
        coeff = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)
        out += coeff * p**a * q**b * hbar**h
    return sp.expand(out)


def from_sympy(expr, shift=64):
    """Inverse of :func:`to_sympy`; p-exponents down to -shift are supported."""
    expr = sp.expand(expr * p**shift)
    if expr == 0:
        return PhaseFn()
    terms = []
    for (a, b, h), c in sp.Poly(expr, p, q, hbar).terms():
        terms.append((a - shift, b, h, GaussianRational(Fraction(str(sp.re(c))), Fraction(str(sp.im(c))))))
    return PhaseFn.from_terms(terms)


def sympy_moyal(f, g):
    """Moyal product by iterating (d_p1 d_q2 - d_q1 d_p2) on f(p1, q1) g(p2, q2)."""
    F = f.subs({p: p1, q: q1}, simultaneous=True)
    G = g.subs({p: p2, q: q2}, simultaneous=True)
    cur = sp.expand(F * G)
    total = sp.Integer(0)
    k = 0
    while cur != 0:
        total += (sp.I * hbar / 2) ** k / sp.factorial(k) * cur
        cur = sp.expand(sp.diff(cur, p1, q2) - sp.diff(cur, q1, p2))
        k += 1
    return sp.expand(total.subs({p1: p, q1: q, p2: p, q2: q}, simultaneous=True))


def sympy_pullback(f):
    return sp.expand(f.subs({p: p**2 / 2, q: q / p}, simultaneous=True))


def sympy_pushforward(f):
    s = sp.sqrt(2 * p)
    return sp.expand(sp.powsimp(sp.expand(f.subs({p: s, q: q * s}, simultaneous=True))))


# -- hypothesis strategies --------------------------------------------------------

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(bool)


def phasefns(max_p=3, max_q=4, max_terms=3, max_h=0):
    term = st.tuples(st.integers(-max_p, max_p), st.integers(0, max_q), st.integers(0, max_h), gaussians)
    return st.lists(term, max_size=max_terms).map(PhaseFn.from_terms)


def qpolys(max_q=6, max_terms=3):
    return st.dictionaries(st.integers(0, max_q), rationals, max_size=max_terms).map(QPoly)


hscalars = st.dictionaries(st.integers(-2, 2), gaussians, max_size=3).map(HScalar)
