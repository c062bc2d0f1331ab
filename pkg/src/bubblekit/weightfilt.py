"""Weighted degrees (min convention), initial forms, graded family ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import PreconditionError, ZeroPolynomialError
from .polycore import FamilyPresentation, Polynomial


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def primitive_integer_vector(values: Sequence) -> tuple:
    """Smallest positive integer vector proportional to ``values``."""
    fr = [_frac(v) for v in values]
    den = lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    g = 0
    for i in ints:
        g = gcd(g, i)
    return tuple(i // g for i in ints)


@dataclass(frozen=True)
class WeightData:
    """Fiber weights ``xi`` and parameter weight ``w0`` (``None`` = infinite)."""

    xi: tuple
    w0: Fraction | None = None

    def __post_init__(self):
        xi = tuple(_frac(v) for v in self.xi)
        if not xi or any(v <= 0 for v in xi):
            raise PreconditionError(f"fiber weights must be positive, got {xi}")
        object.__setattr__(self, "xi", xi)
        if self.w0 is not None:
            w0 = _frac(self.w0)
            if w0 <= 0:
                raise PreconditionError(f"parameter weight must be positive, got {w0}")
            object.__setattr__(self, "w0", w0)

    @classmethod
    def of(cls, xi: Sequence, w0=None) -> "WeightData":
        return cls(tuple(xi), w0)

    def with_w0(self, w0) -> "WeightData":
        return WeightData(self.xi, w0)

    def scaled(self, lam) -> "WeightData":
        lam = _frac(lam)
        return WeightData(tuple(v * lam for v in self.xi),
                          None if self.w0 is None else self.w0 * lam)

    def integral(self) -> tuple:
        """Primitive integer vector proportional to ``(w0, *xi)``."""
        if self.w0 is None:
            raise PreconditionError("integral presentation needs a finite w0")
        return primitive_integer_vector((self.w0,) + self.xi)

    def vector(self, nvars: int) -> tuple:
        """Weights aligned with a ring of ``nvars`` variables.

        A ring one longer than ``xi`` carries the parameter in slot 0; an
        infinite ``w0`` then yields ``None`` in that slot.
        """
        if nvars == len(self.xi):
            return self.xi
        if nvars == len(self.xi) + 1:
            return (self.w0,) + self.xi
        raise PreconditionError(f"{len(self.xi)} fiber weights for a ring of {nvars} variables")


def monomial_weight(exp: Sequence[int], weights: Sequence) -> Fraction:
    total = Fraction(0)
    for e, w in zip(exp, weights):
        if e:
            if w is None:
                raise PreconditionError("parameter term needs a finite w0")
            total += e * w
    return total


def _weights_for(f: Polynomial, w) -> tuple:
    if isinstance(w, WeightData):
        return w.vector(len(f.ring))
    w = tuple(_frac(v) for v in w)
    if len(w) != len(f.ring):
        raise PreconditionError(f"{len(w)} weights for ring {f.ring}")
    return w


def weighted_degree(f: Polynomial, w) -> Fraction:
    """Minimum weight over the terms of ``f``."""
    if f.is_zero():
        raise ZeroPolynomialError("weighted degree of the zero polynomial is undefined")
    weights = _weights_for(f, w)
    return min(monomial_weight(e, weights) for e in f.terms)


@dataclass(frozen=True)
class InitialData:
    degree: Fraction
    initial_form: Polynomial
    attaining_monomials: tuple


def initial_form(f: Polynomial, w) -> InitialData:
    if f.is_zero():
        raise ZeroPolynomialError("initial form of the zero polynomial is undefined")
    weights = _weights_for(f, w)
    by_term = {e: monomial_weight(e, weights) for e in f.terms}
    d = min(by_term.values())
    attaining = tuple(e for e in f.terms if by_term[e] == d)
    form = Polynomial._raw(f.ring, {e: f.terms[e] for e in attaining})
    return InitialData(d, form, attaining)


def graded_family_ideal(fam: FamilyPresentation, w: WeightData, gb: bool | None = None) -> list:
    """Generators of the ideal of the test configuration W(w0; xi) in A^1 x A^l.

    ``gb=None`` picks the default: no Groebner completion for a single
    generator, completion otherwise.
    """
    if w.w0 is None:
        raise PreconditionError("graded family ideal needs a finite w0")
    if gb is None:
        gb = len(fam.generators) > 1
    if gb:
        from .groebner import initial_ideal

        return initial_ideal(list(fam.generators), w)
    return [initial_form(g, w).initial_form for g in fam.generators]
