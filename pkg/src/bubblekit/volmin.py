"""Normalized volume of monomial valuations: closed forms, counting oracle, minimizer."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import NonConvergenceError, PreconditionError, ZeroPolynomialError
from .groebner import standard_monomial_count
from .polycore import Polynomial
from .weightfilt import primitive_integer_vector, weighted_degree

NON_KLT = "non-klt weights"
IRRATIONAL_SUSPECT = "irrational-suspect"
STARTS_DISAGREE = "starts-disagree"


@dataclass(frozen=True)
class VolResult:
    weights: tuple
    log_discrepancy: Fraction
    volume: Fraction
    normalized_volume: Fraction
    dimension: int
    flags: tuple = ()
    float_value: float | None = field(default=None, compare=False)

    @property
    def klt(self) -> bool:
        return self.log_discrepancy > 0

    def to_dict(self) -> dict:
        d = {
            "weights": [str(w) for w in self.weights],
            "log_discrepancy": str(self.log_discrepancy),
            "volume": str(self.volume),
            "normalized_volume": str(self.normalized_volume),
            "dimension": self.dimension,
            "flags": list(self.flags),
        }
        if self.float_value is not None:
            d["float_value"] = repr(self.float_value)
        return d


def _fracs(xi) -> tuple:
    out = tuple(Fraction(v) for v in xi)
    if not out or any(v <= 0 for v in out):
        raise PreconditionError(f"weights must be positive, got {out}")
    return out


def _result(xi, A, vol, n, flags=()) -> VolResult:
    flags = tuple(flags)
    if A <= 0:
        flags += (NON_KLT,)
    return VolResult(xi, A, vol, A**n * vol, n, flags)


def nvol_hypersurface(f: Polynomial, xi: Sequence, n: int | None = None) -> VolResult:
    """Normalized volume of the monomial valuation ``xi`` on the germ ``f = 0`` at 0.

    ``A = sum(xi) - d`` and ``vol = d / prod(xi)`` with ``d`` the weighted
    degree of ``f``.
    """
    xi = _fracs(xi)
    if f.is_zero():
        raise ZeroPolynomialError("hypersurface equation is zero")
    if len(f.ring) != len(xi):
        raise PreconditionError(f"{len(xi)} weights for ring {f.ring}")
    if n is None:
        n = len(xi) - 1
    if n != len(xi) - 1:
        raise PreconditionError("hypersurface needs n = l - 1")
    if f.constant_term():
        raise PreconditionError("equation has a constant term; origin not on the hypersurface")
    d = weighted_degree(f, xi)
    return _result(xi, sum(xi) - d, d / math.prod(xi), n)


def nvol_ambient(xi: Sequence, n: int | None = None) -> VolResult:
    """Monomial valuation on smooth A^N: ``A = sum(xi)``, ``vol = 1/prod(xi)``."""
    xi = _fracs(xi)
    if n is None:
        n = len(xi)
    if n != len(xi):
        raise PreconditionError("ambient mode needs n = number of weights")
    return _result(xi, sum(xi), 1 / math.prod(xi), n)


def vol_bruteforce(gens: Sequence[Polynomial], w: Sequence, n: int, m_max) -> Fraction:
    """``count(weight < m) * n! / m^n``, the counting approximation of vol."""
    m_max = Fraction(m_max)
    if m_max <= 0:
        raise PreconditionError("m_max must be positive")
    count = standard_monomial_count(list(gens), tuple(Fraction(v) for v in w), m_max)
    return Fraction(count * math.factorial(n)) / m_max**n


# minimization

@dataclass(frozen=True)
class MinimizeOptions:
    starts: int = 32
    tol: float = 1e-9
    max_iter: int = 20_000
    denom_bound: int = 10**4
    seed: int = 0
    threads: int = 1


class _Objective:
    """Float normalized volume in log-weight coordinates (last weight pinned to 1).

    Plain floats: the problems are a handful of variables and terms, where
    numpy call overhead dominates.
    """

    def __init__(self, f: Polynomial | None, nvars: int, n: int):
        self.n = n
        self.nvars = nvars
        self.exps = None if f is None else [
            [(i, k) for i, k in enumerate(e) if k] for e in f.terms
        ]

    def weights(self, x) -> list:
        return [math.exp(v) for v in x] + [1.0]

    def value_at(self, w) -> float:
        prod = math.prod(w)
        if self.exps is None:
            A, vol = sum(w), 1.0 / prod
        else:
            d = min(sum(k * w[i] for i, k in e) for e in self.exps)
            A, vol = sum(w) - d, d / prod
        if A <= 0:
            return 1e30
        return A**self.n * vol

    def __call__(self, x) -> float:
        if max(abs(v) for v in x) > 600:
            return 1e30
        return self.value_at(self.weights(x))


_COARSE = {"xatol": 1e-8, "fatol": 1e-12, "adaptive": True}
_FINE = {"xatol": 1e-13, "fatol": 1e-15, "adaptive": True}


def _nelder_mead(obj: _Objective, x0, opts: MinimizeOptions, fine: bool = False):
    return minimize(obj, x0, method="Nelder-Mead",
                    options=dict(_FINE if fine else _COARSE, maxiter=opts.max_iter))


def _polish(obj: _Objective, res, opts: MinimizeOptions, rounds: int = 4):
    """Restart from the incumbent; re-inflating the simplex helps on kinks."""
    best = res
    for _ in range(rounds):
        nxt = _nelder_mead(obj, best.x, opts, fine=True)
        if nxt.fun >= best.fun - 1e-15 * abs(best.fun):
            break
        best = nxt
    return best


def _candidate_bounds(bound: int) -> list:
    out = list(range(1, min(bound, 24) + 1))
    d = 25
    while d < bound:
        out.append(d)
        d *= 2
    out.append(bound)
    return sorted(set(out))


def _exact(f, xi, n):
    return nvol_ambient(xi, n) if f is None else nvol_hypersurface(f, xi, n)


def minimize_nvol(f: Polynomial | str, n: int | None = None,
                  opts: MinimizeOptions | None = None) -> VolResult:
    """Multi-start Nelder-Mead minimization of the normalized volume.

    ``f`` is a fiber polynomial or the string ``"ambient"`` (then ``n`` is
    the ambient dimension). The float optimum is rationalized by continued
    fractions and re-evaluated exactly; the returned weights are the
    primitive integer vector of the best exact candidate.
    """
    opts = opts or MinimizeOptions()
    if isinstance(f, str):
        if f != "ambient":
            raise PreconditionError(f"unknown mode {f!r}")
        if n is None:
            raise PreconditionError("ambient mode needs n")
        poly, nvars = None, n
    else:
        poly, nvars = f, len(f.ring)
        if n is None:
            n = nvars - 1
        if n != nvars - 1:
            raise PreconditionError("hypersurface needs n = l - 1")
        if f.constant_term():
            raise PreconditionError("equation has a constant term")
    if nvars == 1:
        xi = (Fraction(1),)
        return _exact(poly, xi, n)

    obj = _Objective(poly, nvars, n)
    rng = np.random.default_rng(opts.seed)
    x0s = [np.zeros(nvars - 1)] + [rng.uniform(-1.5, 1.5, nvars - 1) for _ in range(opts.starts - 1)]
    if opts.threads > 1:
        with ThreadPoolExecutor(opts.threads) as ex:
            runs = list(ex.map(lambda x0: _nelder_mead(obj, x0, opts), x0s))
    else:
        runs = [_nelder_mead(obj, x0, opts) for x0 in x0s]
    order = sorted(range(len(runs)), key=lambda i: (runs[i].fun, i))
    for i in order[:3]:
        runs[i] = _polish(obj, runs[i], opts)
    best_i = min(order[:3], key=lambda i: (runs[i].fun, i))
    best = runs[best_i]
    if not best.success and best.nit >= opts.max_iter:
        raise NonConvergenceError("Nelder-Mead hit max_iter", best=best)
    fbest = float(best.fun)
    agreeing = sum(1 for r in runs if r.fun <= fbest * (1 + 1e-6))

    w = obj.weights(best.x)
    ratios = [v / min(w) for v in w]
    candidates = {}
    for bound in _candidate_bounds(opts.denom_bound):
        vec = primitive_integer_vector(
            [Fraction(float(r)).limit_denominator(bound) for r in ratios]
        )
        if vec in candidates:
            continue
        res = _exact(poly, vec, n)
        if res.klt:
            candidates[vec] = res
    flags = []
    if agreeing * 2 < len(runs):
        flags.append(STARTS_DISAGREE)
    if not candidates:
        raise NonConvergenceError("no klt rational candidate near the float optimum", best=best)
    vec = min(candidates, key=lambda v: (candidates[v].normalized_volume, v))
    exact = candidates[vec]
    if float(exact.normalized_volume) > fbest * (1 + opts.tol):
        flags.append(IRRATIONAL_SUSPECT)
    return VolResult(exact.weights, exact.log_discrepancy, exact.volume,
                     exact.normalized_volume, n, exact.flags + tuple(flags), fbest)
