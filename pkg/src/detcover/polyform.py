"""Homogeneous forms over Q and over Z/p^a.

Forms are immutable.  Terms are kept in graded-lex descending order
(x0 > x1 > ... > xM), which fixes printing and every monomial basis
derived from them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class FormError(ValueError):
    """Base class for malformed form input."""


class FormSyntaxError(FormError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonHomogeneousError(FormError):
    def __init__(self, first: int, second: int):
        super().__init__(f"form is not homogeneous: terms of degree {first} and {second}")
        self.degrees = (first, second)


def glex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


def _clean_terms(terms: Mapping[Exponent, Fraction]) -> tuple[tuple[Exponent, Fraction], ...]:
    items = [(e, c) for e, c in terms.items() if c != 0]
    items.sort(key=lambda t: glex_key(t[0]), reverse=True)
    return tuple(items)


@dataclass(frozen=True)
class Form:
    num_vars: int
    degree: int
    terms: tuple[tuple[Exponent, Fraction], ...]

    @classmethod
    def from_dict(cls, terms: Mapping[Sequence[int], object], num_vars: int | None = None,
                  degree: int | None = None) -> "Form":
        acc: dict[Exponent, Fraction] = {}
        for exp, coef in terms.items():
            exp = tuple(int(x) for x in exp)
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(coef)
        acc = {e: c for e, c in acc.items() if c != 0}
        if num_vars is None:
            if not terms:
                raise FormError("num_vars required for the zero form")
            num_vars = len(next(iter(terms)))
        degrees = set()
        for exp in acc:
            if len(exp) != num_vars:
                raise FormError(f"exponent {exp} has length {len(exp)}, expected {num_vars}")
            if min(exp) < 0:
                raise FormError(f"negative exponent in {exp}")
            degrees.add(sum(exp))
        if len(degrees) > 1:
            lo, hi = sorted(degrees)[:2]
            raise NonHomogeneousError(lo, hi)
        if degrees:
            found = degrees.pop()
            if degree is not None and degree != found:
                raise FormError(f"declared degree {degree} but terms have degree {found}")
            degree = found
        elif degree is None:
            degree = 0
        return cls(num_vars, degree, _clean_terms(acc))

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> "Form":
        return cls.from_dict({tuple(exp): coef})

    @classmethod
    def zero(cls, num_vars: int, degree: int = 0) -> "Form":
        return cls(num_vars, degree, ())

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> Exponent:
        if not self.terms:
            raise FormError("zero form has no leading monomial")
        return self.terms[0][0]

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise FormError("zero form has no leading coefficient")
        return self.terms[0][1]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.terms)

    # arithmetic

    def _check_compatible(self, other: "Form"):
        if self.num_vars != other.num_vars:
            raise FormError(f"forms in {self.num_vars} and {other.num_vars} variables")

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        if self.terms and other.terms and self.degree != other.degree:
            raise NonHomogeneousError(self.degree, other.degree)
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        degree = self.degree if self.terms else other.degree
        return Form(self.num_vars, degree, _clean_terms(acc))

    def __neg__(self) -> "Form":
        return Form(self.num_vars, self.degree, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other) -> "Form":
        if not isinstance(other, Form):
            return self.scale(other)
        self._check_compatible(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Form(self.num_vars, self.degree + other.degree, _clean_terms(acc))

    def __rmul__(self, other) -> "Form":
        return self.scale(other)

    def __pow__(self, k: int) -> "Form":
        if k < 0:
            raise FormError("negative power")
        result = Form.monomial((0,) * self.num_vars)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c) -> "Form":
        c = Fraction(c)
        if c == 0:
            return Form.zero(self.num_vars, self.degree)
        return Form(self.num_vars, self.degree, tuple((e, c * v) for e, v in self.terms))

    def derivative(self, i: int) -> "Form":
        acc = {}
        for e, c in self.terms:
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                acc[e2] = c * e[i]
        return Form(self.num_vars, max(self.degree - 1, 0), _clean_terms(acc))

    def primitive(self) -> "Form":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for _, c in self.terms), 1)
        ints = [int(c * den) for _, c in self.terms]
        g = reduce(gcd, ints)
        if ints[0] < 0:
            g = -g
        return Form(self.num_vars, self.degree,
                    tuple((e, Fraction(v // g)) for (e, _), v in zip(self.terms, ints)))

    def __str__(self) -> str:
        return format_form(self)


def _monomial_str(exp: Exponent) -> str:
    parts = []
    for i, k in enumerate(exp):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_form(F: Form) -> str:
    """Canonical text: graded-lex descending terms, explicit signs."""
    if not F.terms:
        return "0"
    out = []
    for idx, (exp, c) in enumerate(F.terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _monomial_str(exp)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# parser

_TOKEN = re.compile(r"\s*(?:(\d+/\d+)|(\d+)|x(\d+)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            ws = len(text[pos:]) - len(text[pos:].lstrip())
            raise FormSyntaxError(f"unexpected character {text[pos + ws]!r}", pos + ws)
        start = m.start(0) + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            num, den = m.group(1).split("/")
            if int(den) == 0:
                raise FormSyntaxError("zero denominator", start)
            tokens.append(("num", Fraction(int(num), int(den)), start))
        elif m.group(2):
            tokens.append(("num", Fraction(int(m.group(2))), start))
        elif m.group(3) is not None:
            tokens.append(("var", int(m.group(3)), start))
        else:
            op = "^" if m.group(4) == "**" else m.group(4)
            tokens.append(("op", op, start))
        pos = m.end(0)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # Polynomials are dicts exponent -> Fraction during parsing; homogeneity
    # is checked once the expression is fully expanded.

    def __init__(self, text: str, num_vars: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = num_vars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise FormSyntaxError(f"expected {op!r}", pos)

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            raise FormSyntaxError("empty expression", 0)
        poly = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise FormSyntaxError(f"unexpected token {val!r}", pos)
        return poly

    def expr(self) -> dict:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = _scale(self.term(), sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                acc = _add(acc, _scale(self.term(), -1 if val == "-" else 1))
            else:
                return acc

    def term(self) -> dict:
        acc = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = _mul(acc, self.power())
            elif kind in ("var", "num") or (kind == "op" and val == "("):
                # implicit multiplication, e.g. "2x0" or "x0 x1"
                acc = _mul(acc, self.power())
            else:
                return acc

    def power(self) -> dict:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e, epos = self.take()
            if kind != "num" or e.denominator != 1:
                raise FormSyntaxError("exponent must be a non-negative integer", epos)
            result = {(0,) * self.n: Fraction(1)}
            for _ in range(int(e)):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> dict:
        kind, val, pos = self.take()
        if kind == "num":
            return {(0,) * self.n: val}
        if kind == "var":
            if val >= self.n:
                raise FormSyntaxError(f"variable x{val} out of range for {self.n} variables", pos)
            exp = [0] * self.n
            exp[val] = 1
            return {tuple(exp): Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return _scale(self.power(), -1)
        raise FormSyntaxError("unexpected " + ("end of input" if kind == "end" else repr(val)), pos)


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, Fraction(0)) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _scale(a: dict, s) -> dict:
    return {e: c * s for e, c in a.items()}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in out.items() if c}


def parse_form(text: str, num_vars: int) -> Form:
    """Parse text in variables x0..x{num_vars-1} into a canonical Form.

    Accepts integer and rational literals (``3/4``), ``+ - * ^``, ``**`` as an
    alias of ``^``, parentheses and implicit multiplication.  Raises
    FormSyntaxError (carrying the offending position) or NonHomogeneousError.
    """
    if num_vars < 1:
        raise FormError("num_vars must be positive")
    poly = _Parser(text, num_vars).parse()
    degrees = sorted({sum(e) for e in poly})
    if len(degrees) > 1:
        raise NonHomogeneousError(degrees[0], degrees[1])
    return Form.from_dict(poly, num_vars=num_vars)


def eval_form(F: Form, coords: Sequence[int]):
    """Exact value of F at integer (or rational) coordinates.

    Returns an int when F has integer coefficients and the coordinates are
    integers, a Fraction otherwise.
    """
    if len(coords) != F.num_vars:
        raise FormError(f"expected {F.num_vars} coordinates, got {len(coords)}")
    total = Fraction(0)
    for exp, c in F.terms:
        v = c
        for x, k in zip(coords, exp):
            if k:
                v *= x ** k
        total += v
    if total.denominator == 1 and F.is_integral() and all(isinstance(x, int) for x in coords):
        return int(total)
    return total


@dataclass(frozen=True)
class ModForm:
    """A form with coefficients in Z/modulus, stored as reduced residues."""

    num_vars: int
    degree: int
    modulus: int
    terms: tuple[tuple[Exponent, int], ...]

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, coords: Sequence[int]) -> int:
        m = self.modulus
        total = 0
        for exp, c in self.terms:
            v = c
            for x, k in zip(coords, exp):
                if k:
                    v = v * pow(x, k, m) % m
            total += v
        return total % m

    def derivative(self, i: int) -> "ModForm":
        m = self.modulus
        terms = []
        for e, c in self.terms:
            if e[i] and (c * e[i]) % m:
                terms.append((e[:i] + (e[i] - 1,) + e[i + 1:], c * e[i] % m))
        terms.sort(key=lambda t: glex_key(t[0]), reverse=True)
        return ModForm(self.num_vars, max(self.degree - 1, 0), m, tuple(terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms:
            mono = _monomial_str(exp)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def reduce_form(F: Form, p: int, a: int = 1) -> ModForm:
    """Coefficient-wise image of F in Z/p^a; zero terms are dropped."""
    if a < 1:
        raise ValueError("exponent a must be positive")
    m = p ** a
    terms = []
    for exp, c in F.terms:
        if c.denominator % p == 0:
            raise FormError(f"coefficient {c} has denominator divisible by {p}")
        r = c.numerator * pow(c.denominator, -1, m) % m
        if r:
            terms.append((exp, r))
    return ModForm(F.num_vars, F.degree, m, tuple(terms))


def monomials(num_vars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given degree, graded-lex descending."""
    if num_vars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(num_vars - 1, degree - first):
            out.append((first,) + rest)
    return out


def divides(mono: Exponent, other: Exponent) -> bool:
    return all(a <= b for a, b in zip(mono, other))


def divide(g: Form, f: Form) -> tuple[Form, Form]:
    """Multivariate division of g by a single nonzero form f.

    Returns (quotient, remainder) with g = quotient*f + remainder and no term
    of the remainder divisible by LM(f).  For a single divisor the remainder
    is zero exactly when f divides g.
    """
    g._check_compatible(f)
    lm, lc = f.leading_monomial(), f.leading_coefficient()
    rest = g.as_dict()
    quot: dict[Exponent, Fraction] = {}
    rem: dict[Exponent, Fraction] = {}
    while rest:
        exp = max(rest, key=glex_key)
        c = rest.pop(exp)
        if divides(lm, exp):
            qe = tuple(a - b for a, b in zip(exp, lm))
            qc = c / lc
            quot[qe] = quot.get(qe, Fraction(0)) + qc
            for fe, fc in f.terms[1:]:
                e = tuple(a + b for a, b in zip(qe, fe))
                v = rest.get(e, Fraction(0)) - qc * fc
                if v:
                    rest[e] = v
                else:
                    rest.pop(e, None)
        else:
            rem[exp] = c
    qdeg = max(g.degree - f.degree, 0)
    return (Form(g.num_vars, qdeg, _clean_terms(quot)),
            Form(g.num_vars, g.degree, _clean_terms(rem)))


def form_from_coefficients(basis: Iterable[Exponent], coeffs: Iterable, num_vars: int,
                           degree: int) -> Form:
    return Form.from_dict(dict(zip(basis, coeffs)), num_vars=num_vars, degree=degree)
