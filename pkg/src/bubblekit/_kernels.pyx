# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled standard-monomial counting kernel."""

from libc.stdlib cimport malloc, free

cdef long long _INF = 1LL << 60


cdef long long _rec(int level, long long budget, int nvar, int nlead,
                    long long *leads, int *last_nz, long long *weights,
                    int *active, int *nactive) nogil:
    cdef long long w = weights[level]
    cdef long long cap, hi, total, e, emax
    cdef int i, a, k, off, noff, dead
    off = level * nlead
    if level == nvar - 1:
        cap = _INF
        for i in range(nactive[level]):
            a = active[off + i]
            if leads[a * nvar + level] < cap:
                cap = leads[a * nvar + level]
        hi = budget // w
        if cap - 1 < hi:
            hi = cap - 1
        return hi + 1 if hi >= 0 else 0
    total = 0
    emax = budget // w
    noff = (level + 1) * nlead
    for e in range(emax + 1):
        k = 0
        dead = 0
        for i in range(nactive[level]):
            a = active[off + i]
            if leads[a * nvar + level] <= e:
                if last_nz[a] <= level:
                    dead = 1
                    break
                active[noff + k] = a
                k += 1
        if dead:
            continue
        nactive[level + 1] = k
        total += _rec(level + 1, budget - e * w, nvar, nlead, leads, last_nz,
                      weights, active, nactive)
    return total


def count_standard(leads, weights, long long max_weight):
    """Count monomials of integer weight <= ``max_weight`` outside ``<leads>``."""
    cdef int nvar = len(weights)
    cdef int nlead = len(leads)
    cdef int i, j, a
    cdef long long total
    if max_weight < 0:
        return 0
    leads = [tuple(int(e) for e in m) for m in leads]
    for m in leads:
        if not any(m):
            return 0
    if nvar == 0:
        return 1
    cdef long long *c_leads = <long long *> malloc(max(nlead, 1) * nvar * sizeof(long long))
    cdef int *c_last = <int *> malloc(max(nlead, 1) * sizeof(int))
    cdef long long *c_w = <long long *> malloc(nvar * sizeof(long long))
    cdef int *c_active = <int *> malloc((nvar + 1) * max(nlead, 1) * sizeof(int))
    cdef int *c_nactive = <int *> malloc((nvar + 1) * sizeof(int))
    try:
        for j in range(nvar):
            c_w[j] = int(weights[j])
            if c_w[j] <= 0:
                raise ValueError("weights must be positive integers")
        for a in range(nlead):
            c_last[a] = 0
            for j in range(nvar):
                c_leads[a * nvar + j] = leads[a][j]
                if leads[a][j]:
                    c_last[a] = j
            c_active[a] = a
        c_nactive[0] = nlead
        with nogil:
            total = _rec(0, max_weight, nvar, nlead, c_leads, c_last, c_w,
                         c_active, c_nactive)
        return total
    finally:
        free(c_leads)
        free(c_last)
        free(c_w)
        free(c_active)
        free(c_nactive)
