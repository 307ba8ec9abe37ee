"""Surface syntax for phase-space functions: parser, normalizer and printers.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-'? factor
    factor := base ('^' signed-integer)?
    base   := integer | 'i' | 'p' | 'q' | 'hbar' | '(' expr ')'

Rationals are written as integer quotients ("3/2"); there are no floating
literals and no implicit multiplication.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import HScalar, PhaseFn, QPoly
from .scalars import RATIONAL_TYPES, GaussianRational

__all__ = [
    "ParseError",
    "NormalizeError",
    "Num",
    "Imag",
    "Sym",
    "BinOp",
    "Neg",
    "Pow",
    "parse",
    "normalize",
    "parse_phasefn",
    "format_text",
    "format_latex",
    "format_json",
    "render",
    "from_json",
]


class ParseError(ValueError):
    def __init__(self, position, message, expected=()):
        self.position = position
        self.expected = tuple(expected)
        msg = f"parse error at offset {position}: {message}"
        if self.expected:
            msg += f" (expected {', '.join(self.expected)})"
        super().__init__(msg)


class NormalizeError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message if position is None else f"{message} (at offset {position})")


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class Imag:
    pos: int = 0


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int = 0


# -- lexer / parser ----------------------------------------------------------

_NAMES = {"i", "p", "q", "hbar"}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT = re.compile(r"[0-9]+")


def _tokenize(src):
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _INT.match(src, pos)
        if m:
            toks.append(("int", m.group(), pos))
            pos = m.end()
            continue
        m = _IDENT.match(src, pos)
        if m:
            if m.group() not in _NAMES:
                raise ParseError(pos, f"unknown identifier {m.group()!r}", ("'i'", "'p'", "'q'", "'hbar'"))
            toks.append(("name", m.group(), pos))
            pos = m.end()
            continue
        if ch not in "+-*/^()":
            raise ParseError(pos, f"unexpected character {ch!r}")
        toks.append((ch, ch, pos))
        pos += 1
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, expected):
        kind, text, pos = self.peek()
        what = "end of input" if kind == "eof" else repr(text)
        # keep the offset inside the source for non-empty input
        if pos >= len(self.src) and self.src:
            pos = len(self.src) - 1
        raise ParseError(pos, f"unexpected {what}", expected)

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "eof":
            self.error(("operator", "end of input"))
        return e

    def expr(self):
        left = self.term()
        while self.peek()[0] in ("+", "-"):
            kind, _, pos = self.take()
            left = BinOp(kind, left, self.term(), pos)
        return left

    def term(self):
        left = self.unary()
        while self.peek()[0] in ("*", "/"):
            kind, _, pos = self.take()
            left = BinOp(kind, left, self.unary(), pos)
        return left

    def unary(self):
        if self.peek()[0] == "-":
            _, _, pos = self.take()
            return Neg(self.factor(), pos)
        return self.factor()

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            sign = 1
            if self.peek()[0] in ("-", "+"):
                sign = -1 if self.take()[0] == "-" else 1
            if self.peek()[0] != "int":
                self.error(("integer", "'-'"))
            return Pow(base, sign * int(self.take()[1]), pos)
        return base

    def base(self):
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            return Num(int(text), pos)
        if kind == "name":
            self.take()
            return Imag(pos) if text == "i" else Sym(text, pos)
        if kind == "(":
            self.take()
            e = self.expr()
            if self.peek()[0] != ")":
                self.error(("')'",))
            self.take()
            return e
        self.error(("integer", "'i'", "'p'", "'q'", "'hbar'", "'('"))


def parse(src):
    """Parse ``src`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(src).parse()


# -- normalization -------------------------------------------------------------


def _is_invertible_monomial(F):
    """True for a single term c * p^k * hbar^j with no q dependence."""
    terms = list(F.terms())
    return len(terms) == 1 and terms[0][1] == 0


def _invert(F):
    (p, _, h, c), = F.terms()
    return PhaseFn.term(p=-p, h=-h, coeff=c.inverse())


def _describe(e):
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Imag):
        return "i"
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Neg):
        return f"-{_describe(e.operand)}"
    if isinstance(e, Pow):
        return f"{_describe(e.base)}^{e.exponent}"
    return f"({_describe(e.left)}{e.op}{_describe(e.right)})"


def normalize(e):
    """Collect an expression tree into a :class:`PhaseFn`."""
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Num):
        return PhaseFn.coerce(e.value)
    if isinstance(e, Imag):
        return PhaseFn.term(coeff=GaussianRational(0, 1))
    if isinstance(e, Sym):
        return {"p": PhaseFn.term(p=1), "q": PhaseFn.term(q=1), "hbar": PhaseFn.term(h=1)}[e.name]
    if isinstance(e, Neg):
        return -normalize(e.operand)
    if isinstance(e, BinOp):
        a, b = normalize(e.left), normalize(e.right)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if not b:
            raise NormalizeError(f"division by zero: {_describe(e.right)}", e.pos)
        if not _is_invertible_monomial(b):
            raise NormalizeError(
                f"divisor {_describe(e.right)} is not an invertible monomial c*p^k*hbar^j", e.pos
            )
        return a * _invert(b)
    if isinstance(e, Pow):
        b = normalize(e.base)
        if e.exponent >= 0:
            return b**e.exponent
        if not b:
            raise NormalizeError(f"zero raised to negative power {e.exponent}", e.pos)
        if not _is_invertible_monomial(b):
            if any(q for _, q, _, _ in b.terms()):
                raise NormalizeError(
                    f"negative power of q-dependent {_describe(e.base)} is not in the algebra", e.pos
                )
            raise NormalizeError(f"{_describe(e.base)} is not an invertible monomial", e.pos)
        return _invert(b) ** (-e.exponent)
    raise TypeError(f"not an expression node: {e!r}")


def parse_phasefn(src):
    return normalize(parse(src))


# -- printing ------------------------------------------------------------------

_PHASE_VARS = (("p", "p", "p"), ("q", "q", "q"), ("h", "hbar", r"\hbar"))
_PDO_VARS = (("q", "q", "q"), ("h", "hbar", r"\hbar"), ("d", "D", r"\partial"))


def _flatten(obj):
    """(vars, rows): rows are dicts with integer exponents plus a 'c' coefficient, sorted."""
    if isinstance(obj, PhaseFn):
        rows = [{"p": p, "q": q, "h": h, "c": c} for p, q, h, c in obj.terms()]
        rows.sort(key=lambda r: (-r["p"], r["q"], r["h"]))
        return _PHASE_VARS, rows
    if hasattr(obj, "compose"):
        rows = [{"d": d, "q": q, "h": h, "c": c} for d, q, h, c in obj.terms()]
        rows.sort(key=lambda r: (-r["d"], r["q"], r["h"]))
        return _PDO_VARS, rows
    if isinstance(obj, QPoly):
        return _flatten(PhaseFn.coerce(obj))
    if isinstance(obj, (HScalar, GaussianRational, *RATIONAL_TYPES)):
        return _flatten(PhaseFn.coerce(obj))
    raise TypeError(f"cannot print {type(obj).__name__}")


def _coeff_parts(c, latex):
    """Return (negative, magnitude-string or None for unit, needs-parens)."""
    def rat(x):
        if latex and x.denominator != 1:
            return rf"\frac{{{x.numerator}}}{{{x.denominator}}}"
        return str(x)

    re_, im = c.re, c.im
    if not im:
        neg = re_ < 0
        mag = abs(re_)
        return neg, None if mag == 1 else rat(mag)
    if not re_:
        neg = im < 0
        mag = abs(im)
        if latex:
            return neg, "i" if mag == 1 else f"{rat(mag)} i"
        return neg, "i" if mag == 1 else f"{rat(mag)}*i"
    sign = "-" if im < 0 else "+"
    imag = abs(im)
    if latex:
        body = f"{rat(re_)} {sign} {'' if imag == 1 else rat(imag) + ' '}i"
        return False, f"\\left({body.replace('  ', ' ')}\\right)"
    return False, f"({re_}{sign}{'' if imag == 1 else str(imag) + '*'}i)"


def _render(obj, latex):
    variables, rows = _flatten(obj)
    if not rows:
        return "0"
    pieces = []
    for r in rows:
        neg, mag = _coeff_parts(r["c"], latex)
        factors = []
        for key, text, tex in variables:
            e = r[key]
            if not e:
                continue
            name = tex if latex else text
            if e == 1:
                factors.append(name)
            elif latex:
                factors.append(f"{name}^{{{e}}}")
            else:
                factors.append(f"{name}^{e}")
        if mag is not None:
            factors.insert(0, mag)
        body = (" " if latex else "*").join(factors) if factors else "1"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def format_text(obj):
    return _render(obj, latex=False)


def format_latex(obj):
    return _render(obj, latex=True)


def format_json(obj):
    """Canonical JSON: {"terms": [...]} with keys p|d, q, h, re, im."""
    variables, rows = _flatten(obj)
    lead = variables[0][0] if variables[0][0] == "p" else "d"
    terms = []
    for r in rows:
        c = r["c"]
        terms.append({lead: r[lead], "q": r["q"], "h": r["h"], "re": str(c.re), "im": str(c.im)})
    return json.dumps({"terms": terms}, separators=(",", ":"))


def render(obj, fmt="text"):
    if fmt == "text":
        return format_text(obj)
    if fmt == "latex":
        return format_latex(obj)
    if fmt == "json":
        return format_json(obj)
    raise ValueError(f"unknown format {fmt!r}")


def from_json(src):
    """Inverse of :func:`format_json`; returns a PhaseFn, or a PDO when terms carry "d"."""
    data = json.loads(src) if isinstance(src, str) else src
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise ValueError('expected an object with a "terms" list')
    is_pdo = any("d" in t for t in data["terms"])
    lead = "d" if is_pdo else "p"
    out = []
    for t in data["terms"]:
        for key in (lead, "q", "h"):
            if not isinstance(t.get(key), int) or isinstance(t.get(key), bool):
                raise ValueError(f"term {t!r}: {key!r} must be an integer")
        if t["q"] < 0:
            raise ValueError(f"term {t!r}: negative q-exponent")
        c = GaussianRational(Fraction(t["re"]), Fraction(t["im"]))
        out.append((t[lead], t["q"], t["h"], c))
    if is_pdo:
        from .pdo import PDO

        result = PDO()
        for d, q, h, c in out:
            result = result + PDO.term(d=d, q=q, h=h, coeff=c)
        return result
    return PhaseFn.from_terms(out)
