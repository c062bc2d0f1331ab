"""Pure-Python fallback for the standard-monomial counting kernel.

Same algorithm as ``_kernels.pyx``: enumerate exponents of the leading
variables, vectorize the second-to-last variable with numpy, and close the
last variable in constant time.
"""

from __future__ import annotations

import numpy as np

_INF = np.iinfo(np.int64).max // 4


def count_standard(leads, weights, max_weight: int) -> int:
    """Count monomials of integer weight <= ``max_weight`` outside ``<leads>``.

    ``leads`` are exponent tuples of the monomial ideal generators and
    ``weights`` are positive integers, one per variable.
    """
    weights = [int(w) for w in weights]
    nvar = len(weights)
    if max_weight < 0:
        return 0
    leads = [tuple(int(e) for e in m) for m in leads]
    if any(not any(m) for m in leads):
        return 0
    if nvar == 0:
        return 1
    # index of the last nonzero exponent: once a lead is active past it,
    # every completion is divisible
    last_nz = [max(i for i, e in enumerate(m) if e) for m in leads]
    return _rec(0, int(max_weight), list(range(len(leads))), leads, last_nz, weights, nvar)


def _rec(level, budget, active, leads, last_nz, weights, nvar) -> int:
    w = weights[level]
    if level == nvar - 1:
        cap = _INF
        for a in active:
            cap = min(cap, leads[a][level])
        hi = min(budget // w, cap - 1)
        return hi + 1 if hi >= 0 else 0
    if level == nvar - 2:
        return _second_last(level, budget, active, leads, weights)
    total = 0
    for e in range(budget // w + 1):
        nxt = [a for a in active if leads[a][level] <= e]
        if any(last_nz[a] <= level for a in nxt):
            continue
        total += _rec(level + 1, budget - e * w, nxt, leads, last_nz, weights, nvar)
    return total


def _second_last(level, budget, active, leads, weights) -> int:
    w, w_last = weights[level], weights[level + 1]
    e = np.arange(budget // w + 1, dtype=np.int64)
    rem = budget - e * w
    cap = np.full(e.shape, _INF, dtype=np.int64)
    for a in active:
        m = leads[a]
        cap = np.where(e >= m[level], np.minimum(cap, m[level + 1]), cap)
    hi = np.minimum(rem // w_last, cap - 1)
    return int(np.sum(np.maximum(hi + 1, 0)))
