"""Log-discrepancy profiles of the valuations v_a on a degeneration.

``v_a`` gives the fiber coordinates the weights ``xi`` and the parameter
the weight ``w0 = 1/a``. On a hypersurface family ``F`` the log
discrepancy on the total space is ``(w0 + sum(xi)) - deg(F)`` and the pair
discrepancy subtracts ``v_a(t) = w0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .bubbler import critical_weight
from .errors import PreconditionError, ProfileAnomaly, XiConstantFamily
from .groebner import standard_monomial_count
from .polycore import FamilyPresentation, restrict_parameter
from .volmin import vol_bruteforce
from .weightfilt import WeightData, graded_family_ideal, weighted_degree

log = logging.getLogger(__name__)

CONSTANT = "constant"
INCREASING = "increasing"
ANOMALY = "anomaly"

AMBIENT_N = "ambient_n"
AMBIENT_N_PLUS_1 = "ambient_n_plus_1"


class LogDiscrepancy(NamedTuple):
    A_total: Fraction
    A_pair: Fraction
    degree: Fraction

    @property
    def klt(self) -> bool:
        return self.A_total > 0


def _single_generator(fam: FamilyPresentation):
    if len(fam.generators) != 1:
        raise PreconditionError("discrepancy formulas need a single-generator family")
    return fam.generators[0]


def log_discrepancy(fam: FamilyPresentation, xi: Sequence, w0) -> LogDiscrepancy:
    F = _single_generator(fam)
    w = WeightData.of(xi, w0)
    deg = weighted_degree(F, w)
    A_total = w.w0 + sum(w.xi) - deg
    if A_total <= 0:
        log.warning("non-klt direction: A_total=%s for xi=%s, w0=%s", A_total, w.xi, w.w0)
    return LogDiscrepancy(A_total, A_total - w.w0, deg)


@dataclass(frozen=True)
class ProfilePoint:
    a: Fraction
    w0: Fraction
    deg_total: Fraction
    A_total: Fraction
    A_pair: Fraction
    marker: str = CONSTANT


def critical_a(fam: FamilyPresentation, xi: Sequence) -> Fraction | None:
    """``1/w_cri``; ``None`` stands for infinity (xi-constant family)."""
    try:
        return 1 / critical_weight(fam, xi).w_cri
    except XiConstantFamily:
        return None


def profile(fam: FamilyPresentation, xi: Sequence, a_samples: Sequence, check: bool = True):
    """Exact ``A_pair`` on rational samples of ``a``; returns ``(points, a_min)``.

    With ``check`` the constancy below ``a_min`` and the strict increase
    above it are asserted; violations raise :class:`ProfileAnomaly`.
    """
    F = _single_generator(fam)
    samples = [Fraction(a) for a in a_samples]
    if any(a <= 0 for a in samples):
        raise PreconditionError("a samples must be positive")
    if samples != sorted(samples):
        raise PreconditionError("a samples must be sorted ascending")
    xi = tuple(Fraction(v) for v in xi)
    a_min = critical_a(fam, xi)
    baseline = sum(xi) - weighted_degree(restrict_parameter(F, 0), xi)

    points = []
    bad = []
    prev = None
    for a in samples:
        ld = log_discrepancy(fam, xi, 1 / a)
        below = a_min is None or a <= a_min
        if below:
            ok = ld.A_pair == baseline
        else:
            ok = prev is None or ld.A_pair > prev.A_pair
            ok = ok and ld.A_pair > baseline
        marker = (CONSTANT if below else INCREASING) if ok else ANOMALY
        if not ok:
            bad.append(a)
        pt = ProfilePoint(a, 1 / a, ld.degree, ld.A_total, ld.A_pair, marker)
        points.append(pt)
        prev = pt
    if check and bad:
        raise ProfileAnomaly(f"discrepancy profile anomaly at a = {', '.join(map(str, bad))}", bad)
    return points, a_min


def profile_tsv(points: Sequence[ProfilePoint]) -> str:
    lines = ["a\tw0\tdeg_total\tA_total\tA_pair\tmarker"]
    for p in points:
        lines.append("\t".join(str(v) for v in (p.a, p.w0, p.deg_total, p.A_total, p.A_pair, p.marker)))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FamilyVolume:
    """EXPERIMENTAL probe value ``A_pair^n * vol`` on the total space."""

    value: Fraction | None
    A_pair: Fraction
    volume: Fraction | None
    mode: str
    m_max: Fraction
    flags: tuple = ()
    experimental: bool = True


def family_nvol(fam: FamilyPresentation, xi: Sequence, w0, n: int | None = None,
                mode: str = AMBIENT_N_PLUS_1, m_max=120) -> FamilyVolume:
    """Counting estimate of ``A_pair^n * vol`` for the valuation ``(w0; xi)``.

    ``ambient_n_plus_1`` uses the raw (n+1)-dimensional counting volume of
    the total space. ``ambient_n`` multiplies it by ``v(t) = w0``, which is
    the same as normalizing ``v(t) = 1`` and makes the value scale-invariant.
    """
    if mode not in (AMBIENT_N, AMBIENT_N_PLUS_1):
        raise PreconditionError(f"unknown mode {mode!r}")
    n = fam.fiber_dimension if n is None else n
    ld = log_discrepancy(fam, xi, w0)
    m_max = Fraction(m_max)
    if ld.A_pair <= 0:
        return FamilyVolume(None, ld.A_pair, None, mode, m_max, ("non-klt weights",))
    w = WeightData.of(xi, w0)
    vol = vol_bruteforce(list(fam.generators), (w.w0,) + w.xi, n + 1, m_max)
    if mode == AMBIENT_N:
        vol = vol * w.w0
    return FamilyVolume(ld.A_pair**n * vol, ld.A_pair, vol, mode, m_max)


def restriction_counts(fam: FamilyPresentation, xi: Sequence, a, thresholds: Sequence) -> list:
    """Pairs ``(graded count, fiber count)`` per threshold.

    The graded count uses the ``t = 0`` restriction of the initial ideal for
    ``(1/a; xi)``; the fiber count uses the central fiber with ``xi`` alone.
    Below ``a_min`` the two filtrations agree.
    """
    xi = tuple(Fraction(v) for v in xi)
    w = WeightData.of(xi, 1 / Fraction(a))
    graded = [restrict_parameter(g, 0) for g in graded_family_ideal(fam, w)]
    graded = [g for g in graded if g]
    central = [g for g in fam.central_fiber() if g]
    out = []
    for m in thresholds:
        c1 = standard_monomial_count(graded, xi, m) if graded else None
        c2 = standard_monomial_count(central, xi, m)
        out.append((c1, c2))
    return out
