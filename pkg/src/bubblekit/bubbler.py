"""The bubbling iteration: critical weight, rescaling with base change, termination."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    InexactDivisionError,
    MonotonicityViolation,
    NotCompleteIntersection,
    PreconditionError,
    SectionLeftFiberError,
    XiConstantFamily,
)
from .polycore import (
    FamilyPresentation,
    Polynomial,
    divide_by_parameter_power,
    restrict_parameter,
    substitute_scaling,
)
from .volmin import MinimizeOptions, VolResult, minimize_nvol, nvol_ambient, nvol_hypersurface
from .weightfilt import monomial_weight, primitive_integer_vector, weighted_degree

log = logging.getLogger(__name__)

MAX_SCALING = 10**6

# terminal statuses
DEEPEST_SMOOTH = "deepest_smooth"
NVOL_EQUAL = "nvol_equal"
XI_CONSTANT = "xi_constant"
INCOMPLETE = "incomplete"
ALREADY_SMOOTH = "already_smooth"


@dataclass(frozen=True)
class CriticalWeightReport:
    w_cri: Fraction
    attaining: tuple  # (generator index, exponent tuple incl. parameter slot)
    per_generator_degree: tuple


def critical_weight(fam: FamilyPresentation, xi: Sequence) -> CriticalWeightReport:
    """Largest parameter weight at which some mixed monomial still reaches the fiber degree.

    For each generator ``F_i`` with central fiber ``f_i`` and each term
    ``t^a z^m`` (``a >= 1``) with ``deg(z^m) < deg(f_i)`` the ratio
    ``(deg(f_i) - deg(z^m)) / a`` is a candidate; ``w_cri`` is the maximum.
    """
    xi = tuple(Fraction(v) for v in xi)
    if len(xi) != len(fam.variables):
        raise PreconditionError(f"{len(xi)} weights for {len(fam.variables)} variables")
    degrees = []
    best = None
    attaining = []
    for i, F in enumerate(fam.generators):
        f = restrict_parameter(F, 0)
        if f.is_zero():
            raise PreconditionError(f"generator {i} vanishes on the central fiber")
        d = weighted_degree(f, xi)
        degrees.append(d)
        for e in F.terms:
            a = e[0]
            if a == 0:
                continue
            dz = monomial_weight(e[1:], xi)
            if dz >= d:
                continue
            ratio = (d - dz) / a
            if best is None or ratio > best:
                best, attaining = ratio, [(i, e)]
            elif ratio == best:
                attaining.append((i, e))
    if best is None:
        raise XiConstantFamily("no parameter monomial lowers the weighted degree; family is xi-constant")
    return CriticalWeightReport(best, tuple(attaining), tuple(degrees))


def rescale_step(fam: FamilyPresentation, xi: Sequence[int], w_cri, new_parameter: str | None = None):
    """Weighted blow-up chart with base change ``t = s^p`` where ``w_cri = p/q``.

    Returns ``(new_family, p, q)``. Generators become
    ``F(s^p, s^(q*xi) z) / s^(q*deg(f))``.
    """
    xi = tuple(int(v) for v in xi)
    if any(v <= 0 for v in xi) or primitive_integer_vector(xi) != xi:
        raise PreconditionError(f"xi must be a primitive positive integer vector, got {xi}")
    w_cri = Fraction(w_cri)
    p, q = w_cri.numerator, w_cri.denominator
    if p < 1 or p * q > MAX_SCALING:
        raise PreconditionError(f"scaling p={p}, q={q} out of range")
    param = new_parameter or fam.parameter_name
    exps = (p,) + tuple(q * v for v in xi)
    new_gens = []
    for F in fam.generators:
        d = weighted_degree(restrict_parameter(F, 0), xi)
        shift = q * d
        assert shift.denominator == 1
        G = substitute_scaling(F, exps, param)
        try:
            G = divide_by_parameter_power(G, int(shift))
        except InexactDivisionError as exc:
            raise InexactDivisionError(
                f"w_cri={w_cri} is not critical for xi={xi}: {exc}"
            ) from exc
        if G.constant_term():
            raise SectionLeftFiberError(
                f"rescaled generator {G} has constant term {G.constant_term()}; "
                "the zero section is not on every fiber"
            )
        new_gens.append(G)
    new = FamilyPresentation(fam.fiber_dimension, fam.variables, tuple(new_gens), param)
    return new, p, q


def smoothness_at_origin(gens: Sequence[Polynomial], n: int | None = None) -> bool | None:
    """Jacobian criterion at the origin; ``None`` when not a complete intersection.

    ``gens`` live on the fiber ring. With ``n`` omitted a single generator
    is treated as a hypersurface.
    """
    gens = list(gens)
    if not gens:
        raise PreconditionError("no generators")
    nvars = len(gens[0].ring)
    if n is None:
        n = nvars - len(gens)
    for g in gens:
        if g.constant_term():
            raise PreconditionError(f"{g} does not vanish at the origin")
    if len(gens) != nvars - n:
        return None
    rows = []
    for g in gens:
        row = [Fraction(0)] * nvars
        for e, c in g:
            if sum(e) == 1:
                row[e.index(1)] = c
        rows.append(row)
    return _rank(rows) == len(gens)


def _rank(rows: list) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class BubbleStep:
    step_index: int
    xi: tuple
    w_cri: Fraction
    base_change_degree: int
    weight_scaling: int
    source_generators: tuple
    new_generators: tuple
    central_fiber: tuple
    nvol_source: Fraction
    nvol_central: Fraction | None
    smooth_at_origin: bool | None
    attaining: tuple = ()
    flags: tuple = ()

    @property
    def weights(self) -> tuple:
        """``(q*xi; p)``: the integral weights of the blow-up, parameter last."""
        return tuple(self.weight_scaling * v for v in self.xi) + (self.base_change_degree,)


@dataclass
class BubbleRun:
    steps: list
    status: str
    family: FamilyPresentation
    final_family: FamilyPresentation
    terminal_nvol: Fraction | None = None
    notices: list = field(default_factory=list)

    @property
    def ladder(self) -> list:
        return [s.nvol_source for s in self.steps]


def _fiber_nvol(gens, n: int, vopts: MinimizeOptions, cache: dict | None = None) -> VolResult:
    if len(gens) != 1:
        raise NotCompleteIntersection("normalized volume minimization needs a hypersurface fiber")
    if cache is None:
        return minimize_nvol(gens[0], n, vopts)
    if gens[0] not in cache:
        cache[gens[0]] = minimize_nvol(gens[0], n, vopts)
    return cache[gens[0]]


def run_bubble(fam: FamilyPresentation, max_steps: int = 20,
               xi_override: dict | None = None,
               volmin_opts: MinimizeOptions | None = None) -> BubbleRun:
    """Iterate minimizer -> critical weight -> rescale until the central fiber is smooth.

    ``xi_override`` maps a step index (1-based) to fiber weights, bypassing
    the minimizer for that step.
    """
    vopts = volmin_opts or MinimizeOptions()
    n = fam.fiber_dimension
    xi_override = xi_override or {}
    steps: list = []
    notices = []
    cache: dict = {}
    if n >= 3:
        notices.append("unverified polystability: only the semistable bubble is computed")
    smooth_value = n**n
    current = fam
    central = current.central_fiber()
    smooth = smoothness_at_origin(central, n)
    if smooth:
        return BubbleRun([], ALREADY_SMOOTH, fam, fam, Fraction(smooth_value), notices)

    for index in range(1, max_steps + 1):
        step_flags = []
        if index in xi_override:
            xi = primitive_integer_vector(xi_override[index])
            source = None
        else:
            source = _fiber_nvol(central, n, vopts, cache)
            xi = source.weights
            if "irrational-suspect" in source.flags:
                step_flags.append("irrational-suspect")
        if source is None:
            source = nvol_hypersurface(central[0], xi, n)
        try:
            report = critical_weight(current, xi)
        except XiConstantFamily:
            return BubbleRun(steps, XI_CONSTANT, fam, current, None, notices)
        new_fam, p, q = rescale_step(current, xi, report.w_cri)
        new_central = new_fam.central_fiber()
        smooth = smoothness_at_origin(new_central, n)
        if smooth:
            nvol_new = nvol_ambient((1,) * n, n).normalized_volume
        else:
            nvol_new = _fiber_nvol(new_central, n, vopts, cache).normalized_volume
        step = BubbleStep(
            index, tuple(xi), report.w_cri, p, q,
            current.generators, new_fam.generators, tuple(new_central),
            source.normalized_volume, nvol_new, smooth,
            report.attaining, tuple(step_flags),
        )
        if not nvol_new > source.normalized_volume:
            raise MonotonicityViolation(
                f"step {index}: normalized volume {nvol_new} does not exceed {source.normalized_volume}"
            )
        if steps and not source.normalized_volume > steps[-1].nvol_source:
            raise MonotonicityViolation(f"step {index}: ladder not increasing")
        steps.append(step)
        log.info("step %d: xi=%s w_cri=%s p=%d q=%d", index, xi, report.w_cri, p, q)
        current, central = new_fam, new_central
        if smooth:
            return BubbleRun(steps, DEEPEST_SMOOTH, fam, current, nvol_new, notices)
        if nvol_new == smooth_value:
            return BubbleRun(steps, NVOL_EQUAL, fam, current, nvol_new, notices)
    return BubbleRun(steps, INCOMPLETE, fam, current, None, notices)


def generic_fiber_check(fam: FamilyPresentation, t0, opts: MinimizeOptions | None = None):
    """``"smooth"`` or the minimized normalized volume of the fiber over ``t0``."""
    t0 = Fraction(t0)
    if t0 == 0:
        raise PreconditionError("t0 must be nonzero; use the central fiber for t = 0")
    gens = fam.fiber(t0)
    for g in gens:
        if g.constant_term():
            raise PreconditionError(f"origin is not on the fiber over t={t0}")
    if smoothness_at_origin(gens, fam.fiber_dimension):
        return "smooth"
    return _fiber_nvol(gens, fam.fiber_dimension, opts or MinimizeOptions())


def compose_rescalings(fam: FamilyPresentation, steps: Sequence[BubbleStep]) -> FamilyPresentation:
    """Apply several recorded steps as one substitution and one division."""
    nvars = len(fam.variables)
    # running substitution: t -> s^a, z_i -> s^{b_i} z_i, divide by s^{c_j}
    a, b = 1, [0] * nvars
    cur = fam
    shifts = [Fraction(0)] * len(fam.generators)
    for st in steps:
        p, q = st.base_change_degree, st.weight_scaling
        d = [weighted_degree(restrict_parameter(F, 0), st.xi) for F in cur.generators]
        a, b = a * p, [bi * p + q * x for bi, x in zip(b, st.xi)]
        shifts = [sh * p + q * di for sh, di in zip(shifts, d)]
        cur = FamilyPresentation(cur.fiber_dimension, cur.variables, st.new_generators,
                                 cur.parameter_name)
    out = []
    for F, sh in zip(fam.generators, shifts):
        G = substitute_scaling(F, (a,) + tuple(b), fam.parameter_name)
        out.append(divide_by_parameter_power(G, int(sh)))
    return FamilyPresentation(fam.fiber_dimension, fam.variables, tuple(out), fam.parameter_name)
