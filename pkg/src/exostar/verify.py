"""Named verification suites behind ``exostar verify``.

Every suite is a deterministic sweep: grids are enumerated in a fixed order and
random cases come from ``random.Random(seed)``. Reports contain no timings, so
the same bounds and seed give byte-identical output.
"""

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import cohomology as coh
from .expr import format_text
from .linalg import Infeasible
from .pdo import (
    PDO,
    D,
    dilation,
    exotic_quantize,
    homomorphism_residual,
    laplacian,
    mobius_equivariance_residual,
    pdo_commutator,
    weyl_quantize,
)
from .poly import HScalar, PhaseFn, QPoly
from .scalars import GaussianRational
from .star import (
    MOBIUS_SL2,
    SYMPLECTIC_SL2,
    ProductKind,
    bidifferential_terms,
    conjugated_moyal,
    exotic_product,
    leibniz_residual,
    poisson,
    prop43_residual,
    star_bracket,
    star_product,
    star_term,
    transvectant,
)

__all__ = ["Bounds", "Report", "SUITES", "DEFAULT_SEED", "REPORT_SCHEMA", "run_suite", "random_phasefn"]

DEFAULT_SEED = 20240601

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "bounds", "cases_run", "checks", "failures", "details"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "bounds": {
            "type": "object",
            "required": ["max_p", "max_q", "max_k", "max_K", "seed"],
            "additionalProperties": False,
            "properties": {
                "max_p": {"type": "integer"},
                "max_q": {"type": "integer"},
                "max_k": {"type": "integer"},
                "max_K": {"type": "integer"},
                "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
            },
        },
        "cases_run": {"type": "integer", "minimum": 0},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "run", "passed"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "run": {"type": "integer"},
                    "passed": {"type": "integer"},
                },
            },
        },
        "failures": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "case", "detail"],
                "additionalProperties": False,
                "properties": {
                    "check": {"type": "string"},
                    "case": {"type": "string"},
                    "detail": {"type": "string"},
                },
            },
        },
        "details": {"type": "array", "items": {"type": "string"}},
    },
}


@dataclass(frozen=True)
class Bounds:
    max_p: int
    max_q: int
    max_k: int
    max_K: int
    seed: int = DEFAULT_SEED

    def as_dict(self):
        return {"max_p": self.max_p, "max_q": self.max_q, "max_k": self.max_k,
                "max_K": self.max_K, "seed": self.seed}


@dataclass
class Report:
    suite: str
    bounds: Bounds
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    details: list = field(default_factory=list)

    #: only the first few counterexamples per check are kept
    max_failures_per_check = 5

    def record(self, check, case, ok, detail=""):
        run, passed = self.checks.get(check, (0, 0))
        self.checks[check] = (run + 1, passed + bool(ok))
        if not ok:
            if sum(f["check"] == check for f in self.failures) < self.max_failures_per_check:
                self.failures.append({"check": check, "case": case, "detail": detail})
        return ok

    def zero(self, check, case, value):
        """Record a check that ``value`` is exactly zero."""
        ok = not value
        return self.record(check, case, ok, "" if ok else f"nonzero residual: {_show(value)}")

    @property
    def cases_run(self):
        return sum(run for run, _ in self.checks.values())

    @property
    def passed(self):
        return not self.failures and all(run == ok for run, ok in self.checks.values())

    def as_dict(self):
        return {
            "suite": self.suite,
            "bounds": self.bounds.as_dict(),
            "cases_run": self.cases_run,
            "checks": [{"name": n, "run": r, "passed": p} for n, (r, p) in self.checks.items()],
            "failures": list(self.failures),
            "details": list(self.details),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_text(self):
        b = self.bounds
        lines = [
            f"suite: {self.suite}",
            f"bounds: max_p={b.max_p} max_q={b.max_q} max_k={b.max_k} max_K={b.max_K} seed={b.seed}",
        ]
        for name, (run, ok) in self.checks.items():
            lines.append(f"  [{'PASS' if run == ok else 'FAIL'}] {name}: {ok}/{run}")
        for d in self.details:
            lines.append(f"  note: {d}")
        seen = set()
        for f in self.failures:
            if f["check"] in seen:
                continue
            seen.add(f["check"])
            lines.append(f"  first counterexample for {f['check']}: {f['case']}: {f['detail']}")
        lines.append(f"cases_run: {self.cases_run}")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_latex(self):
        rows = [r"\begin{tabular}{lrr}", r"\hline", r"check & passed & run \\", r"\hline"]
        for name, (run, ok) in self.checks.items():
            esc = name.replace("_", r"\_").replace("^", r"\^{}")
            rows.append(rf"\texttt{{{esc}}} & {ok} & {run} \\")
        rows += [r"\hline", r"\end{tabular}"]
        return "\n".join(rows)

    def render(self, fmt):
        if fmt == "json":
            return self.to_json()
        if fmt == "latex":
            return self.to_latex()
        return self.to_text()


def _show(value, limit=300):
    try:
        s = format_text(value)
    except TypeError:
        s = repr(value)
    return s if len(s) <= limit else s[:limit] + "..."


# -- random inputs ---------------------------------------------------------------


def random_gaussian(rng):
    """Gaussian rational with numerators and denominators drawn from [-9, 9]."""

    def rat():
        den = rng.choice([d for d in range(-9, 10) if d])
        return Fraction(rng.randint(-9, 9), den)

    g = GaussianRational(rat(), rat())
    return g if g else GaussianRational(1)


def random_phasefn(rng, max_p=3, max_q=4, terms=3, max_h=0):
    """Random PhaseFn with ``terms`` terms; never zero."""
    out = PhaseFn()
    while not out:
        out = PhaseFn.from_terms(
            (rng.randint(-max_p, max_p), rng.randint(0, max_q), rng.randint(-max_h, max_h), random_gaussian(rng))
            for _ in range(terms)
        )
    return out


def monomial_grid(max_p, max_q):
    return [PhaseFn.term(p=a, q=b) for a in range(-max_p, max_p + 1) for b in range(max_q + 1)]


def _name(F):
    return format_text(F)


# -- suites -------------------------------------------------------------------------

KINDS = (ProductKind.MOYAL, ProductKind.EXOTIC)
_HALF_IH = HScalar({1: GaussianRational(0, Fraction(1, 2))})


def suite_def1(b, rep):
    rng = random.Random(b.seed)
    pairs = [(random_phasefn(rng, b.max_p, b.max_q), random_phasefn(rng, b.max_p, b.max_q)) for _ in range(200)]
    grid = monomial_grid(b.max_p, b.max_q)
    pairs += list(itertools.product(grid, grid))
    one = PhaseFn.coerce(1)
    for kind in KINDS:
        k_name = kind.value
        for F, G in pairs:
            case = f"{k_name}: F={_name(F)}, G={_name(G)}"
            rep.zero(f"{k_name}/order1_is_poisson", case,
                     star_term(F, G, 1, kind) - poisson(F, G).scale(_HALF_IH))
            top = int(F.q_degree() + G.q_degree())
            f1, g1 = bidifferential_terms(F, one, top + 1, kind), bidifferential_terms(one, G, top + 1, kind)
            bad = next((k for k in range(1, top + 2) if f1[k] or g1[k]), None)
            rep.record(f"{k_name}/vanish_on_constants", case, bad is None, "" if bad is None else f"order {bad}")
            # the scalar prefactor is common to both sides
            fg, gf = bidifferential_terms(F, G, top, kind), bidifferential_terms(G, F, top, kind)
            bad = next((k for k in range(top + 1) if fg[k] != gf[k].scale((-1) ** k)), None)
            rep.record(f"{k_name}/parity_symmetry", case, bad is None, "" if bad is None else f"order {bad}")


def suite_assoc(b, rep, samples=2000):
    rng = random.Random(b.seed)
    grid = monomial_grid(b.max_p, b.max_q)
    triples = list(itertools.product(range(len(grid)), repeat=3))
    if len(triples) > samples:
        triples = sorted(rng.sample(triples, samples))
    cases = [(grid[i], grid[j], grid[k]) for i, j, k in triples]
    cases += [tuple(random_phasefn(rng, b.max_p, b.max_q) for _ in range(3)) for _ in range(10)]
    for kind in KINDS:
        for F, G, H in cases:
            lhs = star_product(star_product(F, G, kind), H, kind)
            rhs = star_product(F, star_product(G, H, kind), kind)
            rep.zero(f"{kind.value}/associativity", f"({_name(F)}, {_name(G)}, {_name(H)})", lhs - rhs)


def suite_jacobi(b, rep, samples=30):
    rng = random.Random(b.seed)
    for kind in KINDS:
        for _ in range(samples):
            F, G, H = (random_phasefn(rng, b.max_p, min(b.max_q, 3), terms=2) for _ in range(3))
            total = PhaseFn()
            for x, y, z in ((F, G, H), (G, H, F), (H, F, G)):
                total = total + star_bracket(x, star_bracket(y, z, kind), kind)
            rep.zero(f"{kind.value}/jacobi", f"({_name(F)}, {_name(G)}, {_name(H)})", total)


def suite_equivariance(b, rep, samples=200):
    rng = random.Random(b.seed)
    pairs = [(random_phasefn(rng, b.max_p, b.max_q), random_phasefn(rng, b.max_p, b.max_q)) for _ in range(samples)]
    for kind, algebra in ((ProductKind.MOYAL, SYMPLECTIC_SL2), (ProductKind.EXOTIC, MOBIUS_SL2)):
        for X in algebra:
            for F, G in pairs:
                rep.zero(f"{kind.value}/leibniz[{_name(X)}]", f"F={_name(F)}, G={_name(G)}",
                         leibniz_residual(X, F, G, kind))
    for X in MOBIUS_SL2:
        for F, _ in pairs:
            rep.zero(f"exotic/mobius_rigidity[{_name(X)}]", f"F={_name(F)}",
                     star_bracket(X, F, ProductKind.EXOTIC) - poisson(X, F))


def suite_prop1(b, rep):
    grid = monomial_grid(b.max_p, b.max_q)
    for F, G in itertools.product(grid, grid):
        rep.zero("conjugated_moyal==exotic", f"F={_name(F)}, G={_name(G)}",
                 conjugated_moyal(F, G) - exotic_product(F, G))


def suite_prop43(b, rep):
    for m, n in itertools.product(range(-b.max_p, b.max_p + 1), repeat=2):
        for k in range(b.max_k + 1):
            for a, c in itertools.product(range(b.max_q + 1), repeat=2):
                rep.zero("prop43_residual", f"m={m} n={n} k={k} f=q^{a} g=q^{c}",
                         prop43_residual(QPoly({a: 1}), QPoly({c: 1}), m, n, k))


def suite_lemma51(b, rep):
    basis = [QPoly({a: 1}) for a in range(b.max_q + 1)]
    for k in (3, 5):
        for (a, X), (c, Y) in itertools.product(enumerate(basis), repeat=2):
            rep.zero(f"J{k}==0", f"X=x^{a}, Y=x^{c}", transvectant(X, Y, 1, 1, k))


def _form7(X, Y):
    d = X.derivative
    e = Y.derivative
    return d(3) * e(4) - d(4) * e(3)


def _form9(X, Y):
    d = X.derivative
    e = Y.derivative
    return (d(3) * e(6) - d(6) * e(3)).scale(2) - (d(4) * e(5) - d(5) * e(4)).scale(9)


def _proportionality(rep, check, pairs, left, right):
    """Record whether left == c * right for one global rational c; return c."""
    const = None
    for case, X, Y in pairs:
        lv, rv = left(X, Y), right(X, Y)
        if not rv:
            rep.zero(check, case, lv)
            continue
        e, coeff = next(iter(rv.items()))
        ratio = lv[e] / coeff if lv[e] else None
        if const is None and ratio:
            const = ratio
        ok = const is not None and lv == rv.scale(const)
        rep.record(check, case, ok, "" if ok else f"{_show(lv)} vs {_show(rv)}")
    return const


def _scalar(h):
    return "undetermined" if h is None else format_text(h)


def suite_coc_forms(b, rep):
    pairs = [(f"X=x^{a}, Y=x^{c}", QPoly({a: 1}), QPoly({c: 1}))
             for a, c in itertools.product(range(b.max_q + 1), repeat=2)]
    c7 = _proportionality(rep, "J7 ~ X'''Y'''' - X''''Y'''", pairs,
                          lambda X, Y: transvectant(X, Y, 1, 1, 7), _form7)
    c9 = _proportionality(rep, "J9 ~ 2(X'''Y^(6) - X^(6)Y''') - 9(X''''Y^(5) - X^(5)Y'''')", pairs,
                          lambda X, Y: transvectant(X, Y, 1, 1, 9), _form9)
    rep.details.append(f"J7 constant c7 = {_scalar(c7)}")
    rep.details.append(f"J9 constant c9 = {_scalar(c9)}")


def _triples(max_q):
    return list(itertools.product(range(max_q + 1), repeat=3))


def suite_cocycles(b, rep):
    V = coh.VectField.monomial
    fields = [V(a) for a in range(b.max_q + 1)]
    for c, lam in ((coh.J7, -5), (coh.J9, -7)):
        for a, d, e in _triples(b.max_q):
            rep.zero(f"delta2({c}) at weight {lam}", f"(x^{a}, x^{d}, x^{e})",
                     coh.delta2(c, fields[a], fields[d], fields[e], weight=lam).value)
    # compatibility of the sign conventions: coboundaries are cocycles
    rng = random.Random(b.seed)
    A = coh.OneCochain([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)], -5)
    small = min(b.max_q, 6)
    for a, d, e in _triples(small):
        rep.zero("delta2(delta1 A) == 0", f"A={list(map(str, A.coeffs))}, (x^{a}, x^{d}, x^{e})",
                 coh.delta2(lambda X, Y: coh.delta1(A, X, Y), fields[a], fields[d], fields[e]).value)


def suite_j3j7(b, rep):
    V = coh.VectField.monomial
    fields = [V(a) for a in range(b.max_q + 1)]
    for a, d, e in _triples(b.max_q):
        rep.zero("cyclic J3^{1,-5}(X, J7(Y,Z)) == 0", f"(x^{a}, x^{d}, x^{e})",
                 coh.cyclic_j3j7_residual(fields[a], fields[d], fields[e]))


def _format_witness(w):
    return ", ".join(f"(x^{a}, x^{b}) coeff x^{c} * {y}" for (a, b, c), y in w.items())


def suite_nontrivial(b, rep):
    for c, lam in ((coh.J7, -5), (coh.J9, -7)):
        for K in range(b.max_K + 1):
            res = coh.nontriviality_certificate(c, lam, K)
            case = f"{c} at weight {lam}, K={K}"
            if isinstance(res, Infeasible):
                ok = coh.check_certificate(res, c, lam, K)
                rep.record(f"{c} not a coboundary", case, ok, "" if ok else "witness does not check")
                if K == b.max_K:
                    rep.details.append(f"{case}: Infeasible, witness {_format_witness(res.witness)}")
            else:
                rep.record(f"{c} not a coboundary", case, False, f"solved by {res.cochain}")
    # control: a genuine coboundary must be solvable
    rng = random.Random(b.seed)
    A0 = coh.OneCochain([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)], -5)
    res = coh.nontriviality_certificate(lambda X, Y: coh.delta1(A0, X, Y), -5, 3)
    ok = isinstance(res, coh.Cobound)
    if ok:
        V = coh.VectField.monomial
        ok = all(coh.delta1(res.cochain, V(a), V(d)) == coh.delta1(A0, V(a), V(d))
                 for a, d in itertools.product(range(14), repeat=2))
    rep.record("control coboundary solvable", f"A0={list(map(str, A0.coeffs))}", ok)


def suite_canonical(b, rep):
    P, Q = PhaseFn.term(p=1), PhaseFn.term(q=1)
    ih = PDO.coerce(HScalar({1: GaussianRational(0, 1)}))
    rep.zero("[p^, q^] == i hbar", "weyl", pdo_commutator(weyl_quantize(P), weyl_quantize(Q)) - ih)
    rep.zero("[p^Phi, q^Phi] == i hbar", "exotic",
             pdo_commutator(exotic_quantize(P), exotic_quantize(Q)) - ih)
    half = Fraction(1, 2)
    table = {
        "p": PDO.term(d=2, h=2, coeff=-half),
        "p*q": PDO.term(h=1, coeff=GaussianRational(0, Fraction(1, 4))) + PDO.term(d=1, q=1, h=1, coeff=GaussianRational(0, half)),
        "p*q^2": PDO.term(q=2, coeff=half),
    }
    for X, name in zip(MOBIUS_SL2, ("p", "p*q", "p*q^2")):
        rep.zero("exotic quantization table", name, exotic_quantize(X) - table[name])
    inv_4ih = HScalar({-1: GaussianRational(0, Fraction(-1, 4))})
    Dinv = D(-2)
    A = dilation()
    q_hat = (Dinv * A + A * Dinv).scale(QPoly.coerce(inv_4ih))
    rep.zero("q^Phi == (Delta^-1 A + A Delta^-1)/(4 i hbar)", "exotic", exotic_quantize(Q) - q_hat)
    # the two printed variants of the exotic generators; report which satisfies the relation
    quarter_variant = laplacian().scale(QPoly.coerce(HScalar({2: GaussianRational(Fraction(-1, 4))})))
    v = pdo_commutator(quarter_variant, q_hat) - ih
    rep.details.append(
        "p^Phi = ((i hbar)^2/2) D^2 satisfies the canonical relation; "
        f"(i hbar/2)^2 D^2 {'also does' if not v else 'does not (commutator ' + format_text(v + ih) + ')'}"
    )
    q_variant = (laplacian() * A + A * laplacian()).scale(QPoly.coerce(inv_4ih))
    w = pdo_commutator(exotic_quantize(P), q_variant) - ih
    rep.details.append(
        f"q^Phi with Delta instead of Delta^-1 {'satisfies' if not w else 'violates'} the canonical relation"
    )


def suite_homomorphism(b, rep):
    grid = monomial_grid(b.max_p, b.max_q)
    for kind in KINDS:
        for F, G in itertools.product(grid, grid):
            rep.zero(f"{kind.value}/quantization_homomorphism", f"F={_name(F)}, G={_name(G)}",
                     homomorphism_residual(F, G, kind))


def suite_mobius_op(b, rep, samples=100):
    rng = random.Random(b.seed)
    for _ in range(samples):
        X = rng.choice(MOBIUS_SL2)
        F = random_phasefn(rng, b.max_p, b.max_q)
        rep.zero("mobius_equivariance_residual", f"X={_name(X)}, F={_name(F)}", mobius_equivariance_residual(X, F))


# name -> (function, default bounds (max_p, max_q, max_k, max_K), help)
SUITES = {
    "def1": (suite_def1, (3, 4, 8, 10), "Star-product axioms: order-1 term, vanishing on constants, parity."),
    "assoc": (suite_assoc, (3, 4, 8, 10), "Associativity of both products."),
    "jacobi": (suite_jacobi, (3, 3, 8, 10), "Jacobi identity for both star commutators."),
    "equivariance": (suite_equivariance, (2, 3, 4, 10), "sl2-equivariance: Leibniz property and Moebius rigidity."),
    "prop1": (suite_prop1, (3, 4, 8, 10), "Exotic product equals the Phi-conjugated Moyal product."),
    "prop43": (suite_prop43, (4, 5, 8, 10), "Phi-conjugated Moyal terms are transvectants."),
    "lemma51": (suite_lemma51, (0, 12, 9, 10), "J3 = J5 = 0 on Vect."),
    "coc-forms": (suite_coc_forms, (0, 12, 9, 10), "J7, J9 proportional to their closed forms."),
    "cocycles": (suite_cocycles, (0, 10, 9, 10), "J7, J9 are 2-cocycles at weights -5, -7."),
    "j3j7": (suite_j3j7, (0, 10, 9, 10), "Cyclic J3(X, J7(Y, Z)) vanishes."),
    "nontrivial": (suite_nontrivial, (0, 0, 0, 10), "J7, J9 are not coboundaries of order <= K."),
    "canonical": (suite_canonical, (1, 1, 1, 10), "Canonical relations and the exotic operator table."),
    "homomorphism": (suite_homomorphism, (3, 3, 8, 10), "Weyl and exotic quantizations are algebra homomorphisms."),
    "mobius-op": (suite_mobius_op, (3, 4, 8, 10), "Moebius equivariance of the exotic quantization."),
}


def default_bounds(suite, seed=DEFAULT_SEED):
    mp, mq, mk, mK = SUITES[suite][1]
    return Bounds(mp, mq, mk, mK, seed)


def run_suite(name, max_p=None, max_q=None, max_k=None, max_K=None, seed=None):
    if name not in SUITES:
        raise KeyError(name)
    d = default_bounds(name)
    b = Bounds(
        d.max_p if max_p is None else max_p,
        d.max_q if max_q is None else max_q,
        d.max_k if max_k is None else max_k,
        d.max_K if max_K is None else max_K,
        d.seed if seed is None else seed,
    )
    rep = Report(name, b)
    SUITES[name][0](b, rep)
    return rep
