"""Vector fields on the line, tensor densities and the 2-cocycles J_7, J_9.

Polynomial vector fields X(x) d/dx act on densities of weight lam by the Lie
derivative X a' - lam X' a. Embedding X -> p X(q) turns the exotic star
commutator into a deformation of this Lie algebra whose first corrections are
the cocycles J_7 (weight -5) and J_9 (weight -7).
"""

from dataclasses import dataclass
from functools import lru_cache

from .linalg import Infeasible, Solution, solve_linear
from .poly import PhaseFn, QPoly
from .scalars import as_fraction
from .star import ProductKind, poisson, star_bracket, transvectant

__all__ = [
    "VectField",
    "DensityElement",
    "OneCochain",
    "TwoCochain",
    "Cobound",
    "J3",
    "J5",
    "J7",
    "J9",
    "vect_bracket",
    "lie_derivative",
    "embed_vect",
    "commutator_tail",
    "delta1",
    "delta2",
    "cyclic_j3j7_residual",
    "nontriviality_certificate",
    "coboundary_system",
    "check_certificate",
]


@dataclass(frozen=True)
class VectField:
    """The vector field coeff(x) d/dx."""

    coeff: QPoly

    def __post_init__(self):
        object.__setattr__(self, "coeff", QPoly.coerce(self.coeff))

    @classmethod
    def monomial(cls, a, c=1):
        return cls(QPoly({a: c}))

    def __add__(self, other):
        return VectField(self.coeff + other.coeff)

    def __sub__(self, other):
        return VectField(self.coeff - other.coeff)

    def scale(self, c):
        return VectField(self.coeff.scale(c))


@dataclass(frozen=True)
class DensityElement:
    """value(x) (dx)^(-weight)."""

    value: QPoly
    weight: int

    def __post_init__(self):
        object.__setattr__(self, "value", QPoly.coerce(self.value))

    def __add__(self, other):
        if other.weight != self.weight:
            raise ValueError(f"cannot add densities of weights {self.weight} and {other.weight}")
        return DensityElement(self.value + other.value, self.weight)

    def __sub__(self, other):
        if other.weight != self.weight:
            raise ValueError(f"cannot subtract densities of weights {self.weight} and {other.weight}")
        return DensityElement(self.value - other.value, self.weight)

    def __bool__(self):
        return bool(self.value)


@dataclass(frozen=True)
class OneCochain:
    """A(X) = sum_i coeffs[i] X^(i), valued in densities of the given weight."""

    coeffs: tuple
    weight: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(a) for a in self.coeffs))

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __call__(self, X):
        out = QPoly()
        d = X.coeff
        for a in self.coeffs:
            if not d:
                break
            if a:
                out = out + d.scale(a)
            d = d.derivative()
        return DensityElement(out, self.weight)


@dataclass(frozen=True)
class TwoCochain:
    """(X, Y) -> J_k^{1,1}(X, Y), valued in densities of weight 2 - k."""

    k: int

    @property
    def weight(self):
        return 2 - self.k

    def __call__(self, X, Y):
        return DensityElement(transvectant(X.coeff, Y.coeff, 1, 1, self.k), self.weight)

    def __str__(self):
        return f"J{self.k}"


@dataclass(frozen=True)
class Cobound:
    """The target cochain equals delta1(cochain)."""

    cochain: OneCochain


J3, J5, J7, J9 = (TwoCochain(k) for k in (3, 5, 7, 9))


def vect_bracket(X, Y):
    return VectField(X.coeff * Y.coeff.derivative() - X.coeff.derivative() * Y.coeff)


def lie_derivative(X, a):
    """Lie derivative of a density: X a' - weight X' a."""
    v = X.coeff * a.value.derivative() - (X.coeff.derivative() * a.value).scale(a.weight)
    return DensityElement(v, a.weight)


def embed_vect(X):
    """X(x) d/dx -> p X(q)."""
    return PhaseFn({1: X.coeff})


def commutator_tail(X, Y):
    """Terms of the exotic star commutator of pX, pY beyond the Poisson bracket.

    Returns a list of (k, DensityElement) sorted by k, where the k-th entry sits
    in p-degree 2 - k and carries its hbar prefactor in the coefficients.
    """
    F, G = embed_vect(X), embed_vect(Y)
    tail = star_bracket(F, G, ProductKind.EXOTIC) - poisson(F, G)
    return [(2 - m, DensityElement(f, m)) for m, f in sorted(tail.items(), reverse=True)]


def delta1(A, X, Y):
    """Coboundary L_X A(Y) - L_Y A(X) - A([X, Y]) at the weight of A."""
    return lie_derivative(X, A(Y)) - lie_derivative(Y, A(X)) - A(vect_bracket(X, Y))


def delta2(c, X, Y, Z, weight=None):
    """Cyclic sum of c(X, [Y, Z]) + L_X c(Y, Z); zero iff c satisfies the cocycle identity on (X, Y, Z).

    ``c`` is any callable (X, Y) -> DensityElement; ``weight`` defaults to the
    weight of its values.
    """
    total = None
    for U, V, W in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        cvw = c(V, W)
        lam = cvw.weight if weight is None else weight
        term = c(U, vect_bracket(V, W)).value + lie_derivative(U, DensityElement(cvw.value, lam)).value
        total = term if total is None else total + term
    return DensityElement(total, weight if weight is not None else c(X, Y).weight)


def cyclic_j3j7_residual(X, Y, Z):
    """Cyclic sum of J_3^{1,-5}(X, J_7(Y, Z))."""
    total = QPoly()
    for U, V, W in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        total = total + transvectant(U.coeff, J7(V, W).value, 1, -5, 3)
    return total


def _rational(h):
    """Extract the rational value of an hbar-free real HScalar."""
    g = h[0]
    if set(h.exponents()) - {0} or g.im:
        raise ValueError(f"expected a rational scalar, got {h!r}")
    return g.re


@lru_cache(maxsize=None)
def _basis_coboundary(i, weight, a, b):
    """delta1 of the cochain X -> X^(i) on the pair (x^a, x^b)."""
    A = OneCochain([0] * i + [1], weight)
    return delta1(A, VectField.monomial(a), VectField.monomial(b)).value


def coboundary_system(target, weight, K, pair_bound=None):
    """Linear system delta1(A) = target for A = sum_{i<=K} a_i X^(i) at ``weight``.

    One equation per monomial pair (x^a, x^b), 0 <= a, b <= pair_bound
    (default K + 10), and per power of x. Returns (rows, rhs, labels) with
    labels[r] = (a, b, c) naming the x^c coefficient of the (x^a, x^b) pair.
    """
    if K < 0:
        raise ValueError("cochain order K must be non-negative")
    bound = K + 10 if pair_bound is None else pair_bound
    rows, rhs, labels = [], [], []
    for a in range(bound + 1):
        for b in range(bound + 1):
            images = [_basis_coboundary(i, weight, a, b) for i in range(K + 1)]
            t = target(VectField.monomial(a), VectField.monomial(b)).value
            powers = set(t.exponents())
            for img in images:
                powers.update(img.exponents())
            for c in sorted(powers):
                rows.append([_rational(img[c]) for img in images])
                rhs.append(_rational(t[c]))
                labels.append((a, b, c))
    return rows, rhs, labels


def nontriviality_certificate(target, weight, K, pair_bound=None):
    """Decide whether ``target`` is a coboundary of an order-K differential cochain.

    Returns :class:`~exostar.linalg.Infeasible` (witness keys are (a, b, c)
    equation labels, see :func:`coboundary_system`) or :class:`Cobound`.
    """
    rows, rhs, labels = coboundary_system(target, weight, K, pair_bound)
    result = solve_linear(rows, rhs)
    if isinstance(result, Solution):
        return Cobound(OneCochain(result.values, weight))
    return Infeasible({labels[r]: y for r, y in result.witness.items()})


def check_certificate(cert, target, weight, K, pair_bound=None):
    """Independently confirm an Infeasible witness against a freshly built system."""
    rows, rhs, labels = coboundary_system(target, weight, K, pair_bound)
    index = {lab: r for r, lab in enumerate(labels)}
    return Infeasible({index[lab]: y for lab, y in cert.witness.items()}).check(rows, rhs)
