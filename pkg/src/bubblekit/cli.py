"""Command-line interface.

Examples::

    bubblekit bubble --file ex13.json --json
    bubblekit wcrit --file ex13.json --xi 2,2,1
    bubblekit profile --file ex13.json --xi 2,2,1 --a-samples 1/2,1,2,4

Exit codes: 0 success, 1 usage error, 2 computation error (JSON error
object on stderr), 3 property anomaly.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bubbler, valprofile
from .errors import BubblekitError, PreconditionError, ProfileAnomaly
from .polycore import FamilyPresentation, Polynomial, format_polynomial
from .volmin import MinimizeOptions, minimize_nvol, nvol_hypersurface, vol_bruteforce
from .weightfilt import WeightData, graded_family_ideal

REPORT_FORMAT = "bubblekit.run_report/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# file formats

def load_family(data: dict) -> FamilyPresentation:
    try:
        variables = list(data["variables"])
        gens = list(data["generators"])
        n = int(data["fiber_dimension"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed family file: {exc}") from exc
    return FamilyPresentation.from_strings(gens, variables, n, data.get("parameter", "t"))


def family_to_dict(fam: FamilyPresentation, notes: str | None = None) -> dict:
    d = {
        "fiber_dimension": fam.fiber_dimension,
        "parameter": fam.parameter_name,
        "variables": list(fam.variables),
        "generators": [format_polynomial(g) for g in fam.generators],
    }
    if notes:
        d["notes"] = notes
    return d


def _monomial_str(ring, exp) -> str:
    return format_polynomial(Polynomial(ring, {exp: 1}))


def step_to_dict(step: bubbler.BubbleStep, fam: FamilyPresentation) -> dict:
    new_fam = FamilyPresentation(fam.fiber_dimension, fam.variables, step.new_generators,
                                 fam.parameter_name)
    return {
        "step_index": step.step_index,
        "xi": [str(v) for v in step.xi],
        "w_cri": str(step.w_cri),
        "base_change_degree": step.base_change_degree,
        "weight_scaling": step.weight_scaling,
        "weights": [str(v) for v in step.weights],
        "attaining": [
            {"generator": i, "monomial": _monomial_str(fam.ring, e)} for i, e in step.attaining
        ],
        "nvol_source": str(step.nvol_source),
        "nvol_central": None if step.nvol_central is None else str(step.nvol_central),
        "smooth_at_origin": step.smooth_at_origin,
        "central_fiber": [format_polynomial(g) for g in step.central_fiber],
        "family": family_to_dict(new_fam),
        "flags": list(step.flags),
    }


def run_to_dict(run: bubbler.BubbleRun) -> dict:
    return {
        "format": REPORT_FORMAT,
        "family": family_to_dict(run.family),
        "status": run.status,
        "terminal_nvol": None if run.terminal_nvol is None else str(run.terminal_nvol),
        "ladder": [str(c) for c in run.ladder],
        "notices": list(run.notices),
        "steps": [step_to_dict(s, run.family) for s in run.steps],
    }


def verify_report(report: dict) -> dict:
    """Reload every step and redo its rescaling; raises on any mismatch."""
    fam = load_family(report["family"])
    for st in report["steps"]:
        xi = [Fraction(v) for v in st["xi"]]
        new, p, q = bubbler.rescale_step(fam, xi, Fraction(st["w_cri"]))
        recorded = load_family(st["family"])
        if recorded.generators != new.generators or p != st["base_change_degree"] or q != st["weight_scaling"]:
            raise PreconditionError(f"step {st['step_index']} does not reproduce")
        fam = recorded
    return {"verified": True, "steps": len(report["steps"])}


# helpers

def _rationals(text: str) -> list:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}") from exc


def _rational(text: str) -> Fraction:
    vals = _rationals(text)
    if len(vals) != 1:
        raise UsageError(f"expected one rational, got {text!r}")
    return vals[0]


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return v


def _vopts(args) -> MinimizeOptions:
    return MinimizeOptions(seed=args.seed, tol=args.tol, denom_bound=args.denom_bound,
                           threads=args.threads)


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path} is not valid JSON: {exc}") from exc


# commands

def cmd_check(args, data, out):
    if "steps" in data:
        if not args.verify:
            _emit({"report": True, "status": data.get("status"), "steps": len(data["steps"])}, out)
        else:
            _emit(verify_report(data), out)
        return 0
    fam = load_family(data)
    central = fam.central_fiber()
    smooth = bubbler.smoothness_at_origin(central, fam.fiber_dimension) if all(central) else None
    _emit({
        "family": family_to_dict(fam),
        "hypersurface": fam.is_hypersurface,
        "central_fiber": [format_polynomial(g) for g in central],
        "smooth_at_origin": smooth,
        "section_on_every_fiber": fam.section_on_every_fiber(),
        "has_parameter_terms": fam.has_parameter_terms(),
    }, out)
    return 0


def cmd_volmin(args, data, out):
    fam = load_family(data)
    central = fam.central_fiber()
    if len(central) != 1:
        raise PreconditionError("volmin needs a single-generator family")
    res = minimize_nvol(central[0], fam.fiber_dimension, _vopts(args))
    _emit(res.to_dict(), out)
    return 0


def cmd_wcrit(args, data, out):
    fam = load_family(data)
    xi = _need(args, "xi")
    rep = bubbler.critical_weight(fam, xi)
    _emit({
        "w_cri": str(rep.w_cri),
        "a_min": str(1 / rep.w_cri),
        "attaining": [{"generator": i, "monomial": _monomial_str(fam.ring, e)} for i, e in rep.attaining],
        "per_generator_degree": [str(d) for d in rep.per_generator_degree],
    }, out)
    return 0


def cmd_initial(args, data, out):
    fam = load_family(data)
    w = WeightData.of(_need(args, "xi"), _need(args, "w0"))
    gens = graded_family_ideal(fam, w, gb=True if args.gb else None)
    _emit({"weights": [str(w.w0)] + [str(v) for v in w.xi],
           "generators": [format_polynomial(g) for g in gens]}, out)
    return 0


def cmd_rescale(args, data, out):
    fam = load_family(data)
    xi = _need(args, "xi")
    w_cri = args.w0 if args.w0 is not None else bubbler.critical_weight(fam, xi).w_cri
    new, p, q = bubbler.rescale_step(fam, xi, w_cri)
    _emit({"w_cri": str(Fraction(w_cri)), "base_change_degree": p, "weight_scaling": q,
           "family": family_to_dict(new)}, out)
    return 0


def cmd_bubble(args, data, out):
    fam = load_family(data)
    override = {1: args.xi} if args.xi else None
    run = bubbler.run_bubble(fam, max_steps=args.max_steps, xi_override=override,
                             volmin_opts=_vopts(args))
    _emit(run_to_dict(run), out)
    return 0


def cmd_profile(args, data, out):
    fam = load_family(data)
    xi = _need(args, "xi")
    samples = _need(args, "a_samples")
    points, a_min = valprofile.profile(fam, xi, samples, check=False)
    if args.json:
        _emit({"a_min": None if a_min is None else str(a_min),
               "points": [{"a": str(p.a), "w0": str(p.w0), "deg_total": str(p.deg_total),
                           "A_total": str(p.A_total), "A_pair": str(p.A_pair), "marker": p.marker}
                          for p in points]}, out)
    else:
        out.write(valprofile.profile_tsv(points))
    bad = [p.a for p in points if p.marker == valprofile.ANOMALY]
    if bad:
        raise ProfileAnomaly("discrepancy profile anomaly", bad)
    return 0


def cmd_volbrute(args, data, out):
    fam = load_family(data)
    xi = _need(args, "xi")
    m_max = args.m_max
    if args.w0 is not None:
        res = valprofile.family_nvol(fam, xi, args.w0, mode=args.mode, m_max=m_max)
        _emit({"experimental": True, "mode": res.mode, "m_max": str(res.m_max),
               "A_pair": str(res.A_pair),
               "volume": None if res.volume is None else str(res.volume),
               "value": None if res.value is None else str(res.value),
               "flags": list(res.flags)}, out)
        return 0
    central = fam.central_fiber()
    n = fam.fiber_dimension
    est = vol_bruteforce(central, xi, n, m_max)
    doc = {"m_max": str(Fraction(m_max)), "estimate": str(est), "estimate_float": repr(float(est))}
    if len(central) == 1 and len(fam.variables) == n + 1:
        doc["closed_form"] = str(nvol_hypersurface(central[0], xi, n).volume)
    _emit(doc, out)
    return 0


COMMANDS = {
    "check": cmd_check, "volmin": cmd_volmin, "wcrit": cmd_wcrit, "initial": cmd_initial,
    "rescale": cmd_rescale, "bubble": cmd_bubble, "profile": cmd_profile, "volbrute": cmd_volbrute,
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bubblekit", description="Exact bubbling of polynomial degenerations.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--file", required=True, help="FamilyFile JSON (or RunReport for check)")
    ap.add_argument("--xi", type=_rationals, help="fiber weights, e.g. 2,2,1")
    ap.add_argument("--w0", type=_rational, help="parameter weight p/q")
    ap.add_argument("--a-samples", type=_rationals, help="sorted rational samples of a")
    ap.add_argument("--m-max", type=_rational, default=Fraction(200))
    ap.add_argument("--max-steps", type=int, default=20)
    ap.add_argument("--mode", choices=[valprofile.AMBIENT_N, valprofile.AMBIENT_N_PLUS_1],
                    default=valprofile.AMBIENT_N_PLUS_1)
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--tsv", action="store_true")
    ap.add_argument("--gb", action="store_true", help="Groebner-complete before taking initial forms")
    ap.add_argument("--verify", action="store_true", help="re-run each step of a RunReport")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--denom-bound", type=int, default=10**4)
    ap.add_argument("--threads", type=int, default=1)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        data = _read_json(args.file)
        return COMMANDS[args.command](args, data, out)
    except UsageError as exc:
        err.write(json.dumps({"error": "UsageError", "message": str(exc)}) + "\n")
        return 1
    except BubblekitError as exc:
        err.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
