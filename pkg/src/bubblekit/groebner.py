"""Buchberger's algorithm, normal forms, initial ideals, standard monomials.

Two kinds of order are supported:

* global: plain ``grevlex`` (default) or ``lex`` over the declared
  variable order;
* weighted (min convention): a monomial leads when its weight is smaller,
  ties broken by the global tiebreak.  With positive weights this is a
  local order, so bases are standard bases of the ideal in the local ring
  at the origin.  They are computed by Lazard's method: homogenize with an
  extra variable ``h`` of weight 1, run Buchberger for a global order on
  ``k[h, z]`` that compares total weight first and then the local order on
  the ``z`` part, and set ``h = 1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm
from typing import Callable, Sequence

from . import kernels
from .errors import BasisTooLargeError, PreconditionError, RingMismatchError
from .polycore import Polynomial, grevlex_key, lex_key
from .weightfilt import WeightData, initial_form, primitive_integer_vector

DEFAULT_MAX_BASIS = 10_000

_TIEBREAKS = {"grevlex": grevlex_key, "lex": lex_key}


def max_basis_size() -> int:
    return int(os.environ.get("BUBBLEKIT_MAX_BASIS", DEFAULT_MAX_BASIS))


@dataclass(frozen=True)
class MonomialOrder:
    """``weights=None`` is a global order; otherwise min-weight-first."""

    weights: tuple | None = None
    tiebreak: str = "grevlex"

    def __post_init__(self):
        if self.tiebreak not in _TIEBREAKS:
            raise ValueError(f"unknown tiebreak {self.tiebreak!r}")
        if self.weights is not None:
            ws = tuple(Fraction(w) for w in self.weights)
            if any(w <= 0 for w in ws):
                raise PreconditionError("order weights must be positive")
            object.__setattr__(self, "weights", ws)

    @classmethod
    def for_weights(cls, w, nvars: int, tiebreak: str = "grevlex") -> "MonomialOrder":
        if isinstance(w, WeightData):
            vec = w.vector(nvars)
            if any(v is None for v in vec):
                raise PreconditionError("weighted order needs a finite w0")
            return cls(vec, tiebreak)
        return cls(tuple(w), tiebreak)

    @property
    def is_local(self) -> bool:
        return self.weights is not None

    def key(self) -> Callable:
        """Sort key; the leading monomial has the largest key."""
        tb = _TIEBREAKS[self.tiebreak]
        if self.weights is None:
            return tb
        ws = self.weights
        return lambda e: (-sum(a * w for a, w in zip(e, ws)), tb(e))


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple
    leading_monomials: tuple
    homogenized: tuple | None = field(default=None, repr=False)

    @property
    def ring(self):
        return self.elements[0].ring

    def is_unit(self) -> bool:
        return any(not any(m) for m in self.leading_monomials)

    def satisfies_buchberger_criterion(self) -> bool:
        """Every S-polynomial reduces to zero (on the homogenized basis when local)."""
        if self.order.is_local:
            gens = [dict(p.terms) for p in self.homogenized]
            key = _homogenized_key(self.order)
        else:
            gens = [dict(p.terms) for p in self.elements]
            key = self.order.key()
        lms = [_lm(g, key) for g in gens]
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                s = _spoly(gens[i], lms[i], gens[j], lms[j])
                if _reduce(s, gens, lms, key):
                    return False
        return True


# dict-level helpers (exponent tuple -> Fraction)

def _lm(p: dict, key) -> tuple:
    return max(p, key=key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _add_scaled(acc: dict, p: dict, c: Fraction, shift: tuple) -> None:
    for e, v in p.items():
        k = tuple(x + y for x, y in zip(e, shift))
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
    l = _lcm(lf, lg)
    out: dict = {}
    _add_scaled(out, f, 1 / f[lf], tuple(a - b for a, b in zip(l, lf)))
    _add_scaled(out, g, -1 / g[lg], tuple(a - b for a, b in zip(l, lg)))
    return out


def _reduce(p: dict, basis: list, lms: list, key) -> dict:
    """Full multivariate division remainder (global orders only)."""
    p = dict(p)
    rem: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lg in zip(basis, lms):
            if _divides(lg, m):
                _add_scaled(p, g, -c / g[lg], tuple(a - b for a, b in zip(m, lg)))
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _monic(p: dict, key) -> dict:
    c = p[_lm(p, key)]
    return {e: v / c for e, v in p.items()}


def _buchberger(gens: list, key, cap: int) -> list:
    """Reduced Groebner basis of dict polynomials for a global order."""
    basis: list = []
    lms: list = []
    for g in gens:
        if g:
            basis.append(_monic(g, key))
            lms.append(_lm(basis[-1], key))
    if not basis:
        raise PreconditionError("all generators are zero")
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def pair_key(ij):
        i, j = ij
        return (key(_lcm(lms[i], lms[j])), -i, -j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lij = _lcm(lms[i], lms[j])
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        # chain criterion
        if any(
            k != i and k != j and _divides(lms[k], lij)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        r = _reduce(_spoly(basis[i], lms[i], basis[j], lms[j]), basis, lms, key)
        if r:
            r = _monic(r, key)
            basis.append(r)
            lms.append(_lm(r, key))
            if len(basis) > cap:
                raise BasisTooLargeError(
                    f"basis exceeded {cap} elements", len(basis), len(pairs)
                )
            n = len(basis) - 1
            pairs.update((k, n) for k in range(n))
    return _interreduce(basis, lms, key)


def _interreduce(basis: list, lms: list, key) -> list:
    keep = []
    for i, lm in enumerate(lms):
        if any(_divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(lms)) if j != i):
            continue
        keep.append(i)
    minimal = [basis[i] for i in keep]
    mlms = [lms[i] for i in keep]
    out = []
    for idx, (g, lg) in enumerate(zip(minimal, mlms)):
        others = [h for k, h in enumerate(minimal) if k != idx]
        olms = [l for k, l in enumerate(mlms) if k != idx]
        tail = {e: v for e, v in g.items() if e != lg}
        r = _reduce(tail, others, olms, key)
        r[lg] = Fraction(1)
        out.append(r)
    out.sort(key=lambda p: key(_lm(p, key)))
    return out


# homogenization for weighted (local) orders

def _integer_weights(order: MonomialOrder) -> tuple:
    return primitive_integer_vector(order.weights)


def _homogenized_key(order: MonomialOrder):
    iw = _integer_weights(order)
    local = order.key()

    def key(e):
        z = e[1:]
        return (e[0] + sum(a * w for a, w in zip(z, iw)), local(z))

    return key


def _homogenize(p: dict, iw: tuple) -> dict:
    wts = {e: sum(a * w for a, w in zip(e, iw)) for e in p}
    top = max(wts.values())
    return {(top - wts[e],) + e: v for e, v in p.items()}


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               max_size: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis (global order) or minimal standard basis (weighted order).

    Pairs are processed smallest-lcm-first with ties broken by input index,
    so the result is deterministic. Raises :class:`BasisTooLargeError` when
    the working basis grows past ``max_size`` (default from the
    ``BUBBLEKIT_MAX_BASIS`` environment variable).
    """
    order = order or MonomialOrder()
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise PreconditionError("buchberger needs a nonzero generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"ring {g.ring} != {ring}")
    if order.is_local and len(order.weights) != len(ring):
        raise PreconditionError(f"{len(order.weights)} weights for ring {ring}")
    cap = max_size if max_size is not None else max_basis_size()
    dicts = [dict(g.terms) for g in gens if g]

    if not order.is_local:
        key = order.key()
        basis = _buchberger(dicts, key, cap)
        elems = tuple(Polynomial._raw(ring, p) for p in basis)
        return GroebnerBasis(order, elems, tuple(_lm(p, key) for p in basis))

    iw = _integer_weights(order)
    hkey = _homogenized_key(order)
    hbasis = _buchberger([_homogenize(p, iw) for p in dicts], hkey, cap)
    hring = ("_h",) + ring
    local = order.key()
    elems, lms = [], []
    for hp in hbasis:
        lm = _lm(hp, hkey)[1:]
        if any(_divides(m, lm) for m in lms):
            continue
        deh: dict = {}
        for e, v in hp.items():
            deh[e[1:]] = deh.get(e[1:], 0) + v
        deh = {e: v for e, v in deh.items() if v}
        assert _lm(deh, local) == lm
        lc = deh[lm]
        deh = {e: v / lc for e, v in deh.items()}
        # drop earlier elements made redundant by this one
        keep = [k for k, m in enumerate(lms) if not _divides(lm, m)]
        elems = [elems[k] for k in keep]
        lms = [lms[k] for k in keep]
        elems.append(Polynomial._raw(ring, deh))
        lms.append(lm)
    return GroebnerBasis(
        order,
        tuple(elems),
        tuple(lms),
        homogenized=tuple(Polynomial._raw(hring, p) for p in hbasis),
    )


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on division by ``gb`` (global orders only)."""
    if f.ring != gb.ring:
        raise RingMismatchError(f"ring {f.ring} != {gb.ring}")
    if gb.order.is_local:
        raise PreconditionError("normal forms for local orders are power series; use a global order")
    key = gb.order.key()
    basis = [dict(p.terms) for p in gb.elements]
    return Polynomial._raw(f.ring, _reduce(dict(f.terms), basis, list(gb.leading_monomials), key))


def initial_ideal(gens: Sequence[Polynomial], w, tiebreak: str = "grevlex") -> list:
    """Min-weight initial forms of a standard basis; they generate in_w(I)."""
    order = MonomialOrder.for_weights(w, len(gens[0].ring), tiebreak)
    gb = buchberger(gens, order)
    return [initial_form(g, order.weights).initial_form for g in gb.elements]


def leading_monomial_ideal(gens: Sequence[Polynomial], w, tiebreak: str = "grevlex") -> tuple:
    order = MonomialOrder.for_weights(w, len(gens[0].ring), tiebreak)
    return buchberger(gens, order).leading_monomials


def count_below(leads: Sequence[tuple], weights: Sequence, bound) -> int:
    """Monomials of weight < ``bound`` not divisible by any of ``leads``."""
    bound = Fraction(bound)
    if bound <= 0:
        return 0
    ws = [Fraction(w) for w in weights]
    den = lcm(*(v.denominator for v in ws + [bound]))
    iw = [int(v * den) for v in ws]
    max_weight = ceil(bound * den) - 1
    return int(kernels.count_standard(list(leads), iw, max_weight))


def standard_monomial_count(gens: Sequence[Polynomial], w, bound) -> int:
    """dim of O/(I + {weight >= bound}) via standard monomials of the local standard basis."""
    if Fraction(bound) <= 0:
        return 0
    order = MonomialOrder.for_weights(w, len(gens[0].ring))
    gb = buchberger(gens, order)
    return count_below(gb.leading_monomials, order.weights, bound)
