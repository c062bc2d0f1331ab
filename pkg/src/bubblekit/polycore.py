"""Exact multivariate polynomials over Q and the polynomial text grammar.

A ring is an ordered tuple of variable names. Family polynomials put the
degeneration parameter in slot 0, so a fiber polynomial is obtained by
dropping slot 0 (see :func:`restrict_parameter`).

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' INT)?
    atom  := NUMBER | NAME | '(' expr ')'

NUMBER is an integer or ``p/q`` literal. There is no implicit
multiplication, so ``t2`` is a name and ``2t`` is a syntax error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    ParseError,
    PreconditionError,
    RingMismatchError,
    UnknownVariableError,
    InexactDivisionError,
)

Monomial = tuple  # tuple[int, ...]
Ring = tuple  # tuple[str, ...]


def grevlex_key(exp: Sequence[int]) -> tuple:
    """Sort key: larger key means larger in graded reverse lexicographic order."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp: Sequence[int]) -> tuple:
    return tuple(exp)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Polynomial:
    """Immutable polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions. Iteration order is
    descending grevlex over the declared variable order.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Iterable[str], terms: Mapping[Monomial, object] | None = None):
        self.ring = tuple(ring)
        nvar = len(self.ring)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvar or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for ring {self.ring}")
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        ordered = sorted((e for e in clean if clean[e]), key=grevlex_key, reverse=True)
        self._terms = {e: clean[e] for e in ordered}
        self._hash = None

    # construction helpers

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        """Trusted constructor: ``terms`` has no zeros and correct shapes."""
        p = cls.__new__(cls)
        p.ring = ring
        ordered = sorted(terms, key=grevlex_key, reverse=True)
        p._terms = {e: terms[e] for e in ordered}
        p._hash = None
        return p

    @classmethod
    def zero(cls, ring: Iterable[str]) -> "Polynomial":
        return cls(ring)

    @classmethod
    def constant(cls, ring: Iterable[str], c) -> "Polynomial":
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def variable(cls, ring: Iterable[str], name: str) -> "Polynomial":
        ring = tuple(ring)
        exp = [0] * len(ring)
        exp[ring.index(name)] = 1
        return cls(ring, {tuple(exp): 1})

    # basic accessors

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.ring))

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.ring, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring {other.ring} != {self.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the grevlex-largest term."""
        return next(iter(self._terms.values()))

    def sign_normalized(self) -> "Polynomial":
        """``self`` or ``-self``, whichever has positive grevlex-leading coefficient."""
        if self._terms and self.leading_coefficient() < 0:
            return -self
        return self

    def evaluate(self, point: Sequence) -> Fraction:
        point = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= v**k
            total += term
        return total

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, ring={self.ring})"


# printing

def _format_monomial(ring: Ring, exp: Monomial) -> str:
    parts = []
    for name, k in zip(ring, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending grevlex, explicit ``*`` and ``^``."""
    if f.is_zero():
        return "0"
    out = []
    for i, (exp, c) in enumerate(f):
        mono = _format_monomial(f.ring, exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# parsing

_TOKEN = re.compile(
    r"(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.index = {name: i for i, name in enumerate(ring)}
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or "/" in exp_tok[1]:
                raise self.error("exponent must be a non-negative integer literal", exp_tok)
            base = base ** int(exp_tok[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                raise self.error("chained exponent needs parentheses")
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            if "/" in val:
                p, q = val.split("/")
                if int(q) == 0:
                    raise ParseError("zero denominator", pos, self.text)
                c = Fraction(int(p), int(q))
            else:
                c = Fraction(int(val))
            return Polynomial.constant(self.ring, c)
        if kind == "name":
            if val not in self.index:
                raise UnknownVariableError(f"unknown variable {val!r}", pos, self.text)
            return Polynomial.variable(self.ring, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_polynomial(text: str, ring: Iterable[str]) -> Polynomial:
    """Parse ``text`` into the expanded canonical polynomial over ``ring``.

    Raises :class:`ParseError` (with ``position``) on bad syntax and
    :class:`UnknownVariableError` for names outside ``ring``.
    """
    return _Parser(text, tuple(ring)).parse()


def poly_arith(op: str, a: Polynomial, b: Polynomial) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring {a.ring} != {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# parameter handling

def substitute_scaling(f: Polynomial, exps: Sequence[int], new_parameter: str = "s") -> Polynomial:
    """Return ``f(s^e0, s^e1*z1, ..., s^el*zl)`` over ``(s, z1..zl)``.

    Slot 0 of ``f.ring`` is the parameter. The s-adic order of the result
    is the min-convention weighted degree of ``f`` for weights ``exps``.
    """
    exps = [int(e) for e in exps]
    if len(exps) != len(f.ring):
        raise RingMismatchError(f"{len(exps)} scaling exponents for ring {f.ring}")
    if exps[0] < 1 or any(e < 0 for e in exps[1:]):
        raise PreconditionError("need e0 >= 1 and e_i >= 0")
    ring = (new_parameter,) + f.ring[1:]
    out = {}
    for e, c in f:
        s_pow = sum(a * b for a, b in zip(exps, e))
        key = (s_pow,) + e[1:]
        out[key] = out.get(key, 0) + c
    return Polynomial._raw(ring, {e: c for e, c in out.items() if c})


def parameter_order(f: Polynomial) -> int:
    """Largest k with parameter^k dividing ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return min(e[0] for e in f.terms)


def divide_by_parameter_power(f: Polynomial, k: int) -> Polynomial:
    """Exact division by ``ring[0]**k``."""
    out = {}
    for e, c in f:
        if e[0] < k:
            raise InexactDivisionError(
                f"{f.ring[0]}^{k} does not divide {format_polynomial(f)}"
            )
        out[(e[0] - k,) + e[1:]] = c
    return Polynomial._raw(f.ring, out)


def restrict_parameter(f: Polynomial, value=0) -> Polynomial:
    """Specialize slot 0 to ``value``; the result lives on ``ring[1:]``."""
    value = _as_fraction(value)
    ring = f.ring[1:]
    out = {}
    for e, c in f:
        if e[0] and not value:
            continue
        v = c * value ** e[0] if e[0] else c
        out[e[1:]] = out.get(e[1:], 0) + v
    return Polynomial._raw(ring, {e: c for e, c in out.items() if c})


def lift_to_family(f: Polynomial, parameter: str = "t") -> Polynomial:
    """Embed a fiber polynomial into the family ring with parameter exponent 0."""
    return Polynomial._raw((parameter,) + f.ring, {(0,) + e: c for e, c in f})


@dataclass(frozen=True)
class FamilyPresentation:
    """A degeneration cut out in Delta x A^l by ``generators``.

    Generators live on the ring ``(parameter_name, *variables)``; the base
    point is the zero section.
    """

    fiber_dimension: int
    variables: tuple
    generators: tuple
    parameter_name: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.fiber_dimension < 1:
            raise PreconditionError("fiber_dimension must be positive")
        if not self.generators:
            raise PreconditionError("a family needs at least one generator")
        ring = self.ring
        for g in self.generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator ring {g.ring} != family ring {ring}")
            if g.constant_term():
                raise PreconditionError(
                    f"generator {g} has a constant term; the zero section must lie on X"
                )

    @classmethod
    def from_strings(cls, generators: Sequence[str], variables: Sequence[str],
                     fiber_dimension: int, parameter_name: str = "t") -> "FamilyPresentation":
        ring = (parameter_name,) + tuple(variables)
        gens = tuple(parse_polynomial(g, ring) for g in generators)
        return cls(fiber_dimension, tuple(variables), gens, parameter_name)

    @property
    def ring(self) -> Ring:
        return (self.parameter_name,) + self.variables

    @property
    def is_hypersurface(self) -> bool:
        return len(self.generators) == 1 and len(self.variables) == self.fiber_dimension + 1

    def central_fiber(self) -> list:
        return [restrict_parameter(g, 0) for g in self.generators]

    def fiber(self, t0) -> list:
        return [restrict_parameter(g, t0) for g in self.generators]

    def section_on_every_fiber(self) -> bool:
        """True when no generator has a pure-parameter monomial."""
        return all(any(e[1:]) for g in self.generators for e in g.terms)

    def has_parameter_terms(self) -> bool:
        return any(e[0] > 0 for g in self.generators for e in g.terms)
