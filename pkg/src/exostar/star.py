"""Moyal and exotic star-products on Laurent polynomials in p.

Both products are computed exactly. For F, G with q-degrees a and b every
bidifferential term of order k > a + b vanishes, so the formal series in hbar
is a finite sum; ``max_order`` only filters the output.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .poly import HScalar, PhaseFn, QPoly
from .scalars import GaussianRational

__all__ = [
    "ProductKind",
    "WeightedDensity",
    "ParityError",
    "poisson",
    "moyal_term",
    "moyal_product",
    "pochhammer_weight",
    "transvectant",
    "exotic_term",
    "exotic_product",
    "bidifferential_term",
    "star_term",
    "star_product",
    "star_bracket",
    "phi_pullback",
    "phi_pushforward",
    "conjugated_moyal",
    "prop43_residual",
    "leibniz_residual",
    "SYMPLECTIC_SL2",
    "MOBIUS_SL2",
]


class ProductKind(enum.Enum):
    MOYAL = "moyal"
    EXOTIC = "exotic"

    @classmethod
    def parse(cls, s):
        if isinstance(s, cls):
            return s
        return cls(str(s).lower())


@dataclass(frozen=True)
class WeightedDensity:
    """A q-polynomial carrying a density weight; stands for p^weight * coeff."""

    coeff: QPoly
    weight: int

    def as_phasefn(self):
        return PhaseFn({self.weight: self.coeff})

    @classmethod
    def from_phasefn(cls, F):
        """Inverse of :meth:`as_phasefn` for p-homogeneous (or zero) F."""
        F = PhaseFn.coerce(F)
        if len(F) > 1:
            raise ValueError("PhaseFn is not p-homogeneous")
        if not F:
            return cls(QPoly(), 0)
        (m, f), = F.items()
        return cls(f, m)


class ParityError(ValueError):
    """Raised when pushing forward a monomial p^a q^b with a + b odd."""

    def __init__(self, p, q):
        self.monomial = (p, q)
        super().__init__(
            f"monomial p^{p}*q^{q} has odd total degree {p + q}; "
            "it is not in the image of the Phi pullback"
        )


SYMPLECTIC_SL2 = (PhaseFn.term(p=2), PhaseFn.term(p=1, q=1), PhaseFn.term(q=2))
MOBIUS_SL2 = (PhaseFn.term(p=1), PhaseFn.term(p=1, q=1), PhaseFn.term(p=1, q=2))


@lru_cache(maxsize=None)
def _ih_power(k, denom):
    """(i*hbar)^k / denom as an HScalar."""
    return HScalar({k: GaussianRational(0, 1) ** k / denom})


def poisson(F, G):
    F, G = PhaseFn.coerce(F), PhaseFn.coerce(G)
    return F.partial("p") * G.partial("q") - F.partial("q") * G.partial("p")


def moyal_term(F, G, k):
    """The order-k bidifferential term {F, G}_k of the Moyal product."""
    if k < 0:
        raise ValueError("order k must be non-negative")
    F, G = PhaseFn.coerce(F), PhaseFn.coerce(G)
    return _moyal_term(_Jets(F, "q", "p"), _Jets(G, "p", "q"), k)


class _Jets:
    """Memoized mixed partials d_a^i d_b^j F."""

    def __init__(self, F, a, b):
        self.F, self.a, self.b = F, a, b
        self.degree = F.q_degree()
        self._cache = {}

    def __call__(self, i, j):
        key = (i, j)
        if key not in self._cache:
            if i == 0:
                self._cache[key] = self.F.partial(self.b, j)
            else:
                self._cache[key] = self(i - 1, 0).partial(self.a, 1).partial(self.b, j)
        return self._cache[key]


def _moyal_term(FJ, GJ, k):
    # FJ(i, j) = d_q^i d_p^j F and GJ(i, j) = d_p^i d_q^j G
    if k == 0:
        return FJ(0, 0) * GJ(0, 0)
    a, b = FJ.degree, GJ.degree
    out = PhaseFn()
    for i in range(k + 1):
        # needs i q-derivatives of F and k - i of G
        if i > a or k - i > b:
            continue
        c = (-1) ** i * math.comb(k, i)
        out = out + (FJ(i, k - i) * GJ(i, k - i)).scale(c)
    return out


def _max_order(F, G):
    a, b = F.q_degree(), G.q_degree()
    if a < 0 or b < 0:
        return -1
    return a + b


def moyal_product(F, G, max_order=None):
    F, G = PhaseFn.coerce(F), PhaseFn.coerce(G)
    FJ, GJ = _Jets(F, "q", "p"), _Jets(G, "p", "q")
    out = PhaseFn()
    for k in range(_max_order(F, G) + 1):
        t = _moyal_term(FJ, GJ, k)
        if t:
            out = out + t.scale(_ih_power(k, 2**k * math.factorial(k)))
    if max_order is not None:
        out = out.truncate_hbar(max_order)
    return out


def pochhammer_weight(m, i, k):
    """prod_{j=i}^{k-1} (2m - j); equals (2m-i)!/(2m-k)! whenever 2m >= k."""
    w = 1
    for j in range(i, k):
        w *= 2 * m - j
    return w


def transvectant(f, g, m, n, k):
    """Transvectant J_k^{m,n}(f, g) of two q-polynomials with integer weights m, n.

    J_k^{m,n}(f, g) = sum_{i+j=k} (-1)^i / (i! j!) * W(m, i, k) W(n, j, k) f^(i) g^(j)

    with W the Pochhammer weight. This is the binomial form sum (-1)^i C(k, i) ...
    divided by k!, the normalization for which

        Phi^*^-1 {Phi^* p^m f, Phi^* p^n g}_k = (k!/2^k) p^(m+n-k) J_k^{m,n}(f, g)

    and for which :func:`exotic_product` is associative. Orders 0 and 1 agree
    with the binomial form.
    """
    if k < 0:
        raise ValueError("order k must be non-negative")
    f, g = QPoly.coerce(f), QPoly.coerce(g)
    if not f or not g:
        return QPoly()
    return _transvectant(_derivatives(f), _derivatives(g), m, n, k)


def _derivatives(f):
    """[f, f', f'', ...] up to the last nonzero derivative."""
    out = [f]
    while out[-1].degree() > 0:
        out.append(out[-1].derivative())
    return out


def _transvectant(fd, gd, m, n, k):
    out = QPoly()
    for i in range(max(0, k - len(gd) + 1), min(k, len(fd) - 1) + 1):
        j = k - i
        w = pochhammer_weight(m, i, k) * pochhammer_weight(n, j, k)
        if w:
            c = mpq((-1) ** i * w, math.factorial(i) * math.factorial(j))
            out = out + (fd[i] * gd[j]).scale(c)
    return out


def exotic_term(F, G, k):
    """Order-k bilinear term: sum over components of p^(m+n-k) J_k^{m,n}(f, g)."""
    if k < 0:
        raise ValueError("order k must be non-negative")
    F, G = PhaseFn.coerce(F), PhaseFn.coerce(G)
    return _exotic_term(_component_jets(F), _component_jets(G), k)


def _component_jets(F):
    return [(m, _derivatives(f)) for m, f in F.items()]


def _exotic_term(FJ, GJ, k):
    out = {}
    for m, fd in FJ:
        for n, gd in GJ:
            J = _transvectant(fd, gd, m, n, k)
            if J:
                e = m + n - k
                out[e] = out[e] + J if e in out else J
    return PhaseFn(out)


def exotic_product(F, G, max_order=None):
    F, G = PhaseFn.coerce(F), PhaseFn.coerce(G)
    FJ, GJ = _component_jets(F), _component_jets(G)
    out = PhaseFn()
    for k in range(_max_order(F, G) + 1):
        t = _exotic_term(FJ, GJ, k)
        if t:
            out = out + t.scale(_ih_power(k, 4**k))
    if max_order is not None:
        out = out.truncate_hbar(max_order)
    return out


def bidifferential_term(F, G, k, kind):
    """The order-k bidifferential operator of the selected product, without its scalar prefactor."""
    if ProductKind.parse(kind) is ProductKind.MOYAL:
        return moyal_term(F, G, k)
    return exotic_term(F, G, k)


def bidifferential_terms(F, G, top, kind):
    """[bidifferential_term(F, G, k, kind) for k in 0..top], sharing derivative jets."""
    F, G = PhaseFn.coerce(F), PhaseFn.coerce(G)
    if ProductKind.parse(kind) is ProductKind.MOYAL:
        FJ, GJ = _Jets(F, "q", "p"), _Jets(G, "p", "q")
        return [_moyal_term(FJ, GJ, k) for k in range(top + 1)]
    FJ, GJ = _component_jets(F), _component_jets(G)
    return [_exotic_term(FJ, GJ, k) for k in range(top + 1)]


def _prefactor(k, kind):
    if kind is ProductKind.MOYAL:
        return _ih_power(k, 2**k * math.factorial(k))
    return _ih_power(k, 4**k)


def star_term(F, G, k, kind):
    """The full order-k contribution of the selected product, scalar prefactor included.

    For either kind, ``star_term(F, G, 1, kind) == (i*hbar/2) * poisson(F, G)``.
    """
    kind = ProductKind.parse(kind)
    return bidifferential_term(F, G, k, kind).scale(_prefactor(k, kind))


def star_product(F, G, kind, max_order=None):
    return _star_product(PhaseFn.coerce(F), PhaseFn.coerce(G), ProductKind.parse(kind), max_order)


# values are immutable, so repeated products (Leibniz and Jacobi sweeps) can be shared
@lru_cache(maxsize=8192)
def _star_product(F, G, kind, max_order):
    if kind is ProductKind.MOYAL:
        return moyal_product(F, G, max_order)
    return exotic_product(F, G, max_order)


_INV_IH = HScalar({-1: GaussianRational(0, -1)})


def star_bracket(F, G, kind):
    """(F * G - G * F) / (i hbar) for the selected product."""
    return (star_product(F, G, kind) - star_product(G, F, kind)).scale(_INV_IH)


def phi_pullback(F):
    """Composition with Phi(p, q) = (p^2/2, q/p): p^m q^n -> 2^-m p^(2m-n) q^n."""
    F = PhaseFn.coerce(F)
    terms = []
    for m, f in F.items():
        s = Fraction(1, 2**m) if m >= 0 else Fraction(2 ** (-m))
        for n, c in f.items():
            terms.append((2 * m - n, n, c.scale(s)))
    return _assemble(terms)


def phi_pushforward(F):
    """Inverse of :func:`phi_pullback` on the even-parity subalgebra."""
    F = PhaseFn.coerce(F)
    terms = []
    for a, f in F.items():
        for b, c in f.items():
            if (a + b) % 2:
                raise ParityError(a, b)
            m = (a + b) // 2
            s = Fraction(2**m) if m >= 0 else Fraction(1, 2 ** (-m))
            terms.append((m, b, c.scale(s)))
    return _assemble(terms)


def _assemble(terms):
    nested = {}
    for p, q, c in terms:
        nested.setdefault(p, {})[q] = c
    return PhaseFn({p: QPoly(qs) for p, qs in nested.items()})


def conjugated_moyal(F, G):
    return phi_pushforward(moyal_product(phi_pullback(F), phi_pullback(G)))


def prop43_residual(f, g, m, n, k):
    """Pushed-forward Moyal term of the pulled-back densities minus (k!/2^k) p^(m+n-k) J_k."""
    if k < 0:
        raise ValueError("order k must be non-negative")
    f, g = QPoly.coerce(f), QPoly.coerce(g)
    F, G = PhaseFn({m: f}), PhaseFn({n: g})
    lhs = phi_pushforward(moyal_term(phi_pullback(F), phi_pullback(G), k))
    rhs = PhaseFn({m + n - k: transvectant(f, g, m, n, k)}).scale(
        Fraction(math.factorial(k), 2**k)
    )
    return lhs - rhs


def leibniz_residual(X, F, G, kind):
    """{X, F*G} - {X, F}*G - F*{X, G}; vanishes when X lies in the sl2 preserved by ``kind``."""
    X = PhaseFn.coerce(X)
    return (
        poisson(X, star_product(F, G, kind))
        - star_product(poisson(X, F), G, kind)
        - star_product(F, poisson(X, G), kind)
    )
