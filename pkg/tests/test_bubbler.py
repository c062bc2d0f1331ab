from fractions import Fraction

import pytest

from bubblekit import bubbler
from bubblekit.bubbler import (
    compose_rescalings,
    critical_weight,
    generic_fiber_check,
    rescale_step,
    run_bubble,
    smoothness_at_origin,
)
from bubblekit.errors import (
    InexactDivisionError,
    MonotonicityViolation,
    PreconditionError,
    SectionLeftFiberError,
    XiConstantFamily,
)
from bubblekit.polycore import parse_polynomial
from bubblekit.volmin import VolResult
from bubblekit.weightfilt import WeightData, initial_form

from conftest import EX13, EX13_STEP2, EX13_STEP3, EX13_STEP4, P, family

XYZ = ("x", "y", "z")


def Q(text):
    return parse_polynomial(text, XYZ)


def test_critical_weight_examples(ex13, ex13_step2, ex13_step3):
    rep = critical_weight(ex13, (2, 2, 1))
    assert rep.w_cri == 1
    assert [e for _, e in rep.attaining] == [(1, 0, 0, 3)]
    rep = critical_weight(ex13_step2, (3, 3, 2))
    assert rep.w_cri == 2 and [e for _, e in rep.attaining] == [(1, 0, 0, 2)]
    rep = critical_weight(ex13_step3, (1, 1, 1))
    assert rep.w_cri == Fraction(1, 2) and [e for _, e in rep.attaining] == [(2, 0, 0, 1)]


def test_critical_weight_product_family():
    with pytest.raises(XiConstantFamily):
        critical_weight(family("x*y - z^2"), (1, 1, 1))


@pytest.mark.parametrize("eps", [Fraction(1, 7), Fraction(1, 100)])
def test_critical_boundary(ex13, eps):
    xi = (2, 2, 1)
    w_cri = critical_weight(ex13, xi).w_cri
    F = ex13.generators[0]
    central_in = initial_form(P("x*y - z^4"), WeightData.of(xi, 1)).initial_form
    # above the critical weight only the central fiber's initial form survives
    assert initial_form(F, WeightData.of(xi, w_cri + eps)).initial_form == central_in
    at = initial_form(F, WeightData.of(xi, w_cri)).initial_form
    assert at != central_in and at.coefficient((1, 0, 0, 3)) != 0
    # below it the degree drops
    assert initial_form(F, WeightData.of(xi, w_cri - eps)).degree < 4


@pytest.mark.parametrize("src, xi, w, expected, pq", [
    (EX13, (2, 2, 1), 1, EX13_STEP2, (1, 1)),
    (EX13_STEP2, (3, 3, 2), 2, EX13_STEP3, (2, 1)),
    (EX13_STEP3, (1, 1, 1), Fraction(1, 2), EX13_STEP4, (1, 2)),
])
def test_rescale_examples(src, xi, w, expected, pq):
    new, p, q = rescale_step(family(src), xi, w)
    assert (p, q) == pq
    assert new.generators[0].sign_normalized() == P(expected).sign_normalized()


def test_rescale_below_critical_weight_is_inexact(ex13):
    with pytest.raises(InexactDivisionError):
        rescale_step(ex13, (2, 2, 1), Fraction(1, 2))


def test_section_leaves_fiber():
    fam = family("x*y - (z - t)^2")
    assert critical_weight(fam, (1, 1, 1)).w_cri == 1
    with pytest.raises(SectionLeftFiberError):
        rescale_step(fam, (1, 1, 1), 1)


def test_smoothness():
    assert smoothness_at_origin([Q("x*y - z^2 + z")]) is True
    assert smoothness_at_origin([Q("x*y - z^4")]) is False
    central = family(EX13_STEP4).central_fiber()
    assert central == [Q("x*y - z^2 + z")] or central == (Q("x*y - z^2 + z"),)
    assert smoothness_at_origin(central) is True
    # two equations in three variables with n = 2 is not a complete intersection
    assert smoothness_at_origin([Q("x"), Q("y")], 2) is None


def test_run_example(ex13):
    run = run_bubble(ex13)
    assert run.status == bubbler.DEEPEST_SMOOTH
    assert [s.xi for s in run.steps] == [(2, 2, 1), (3, 3, 2), (1, 1, 1)]
    assert [s.base_change_degree for s in run.steps] == [1, 2, 1]
    assert [s.weights for s in run.steps] == [(2, 2, 1, 1), (3, 3, 2, 2), (2, 2, 2, 1)]
    assert run.ladder == [1, Fraction(4, 3), 2]
    assert run.terminal_nvol == 4
    centrals = [s.central_fiber[0] for s in run.steps]
    assert centrals == [Q("x*y - z^4 + z^3"), Q("x*y + z^3 - z^2"), Q("x*y - z^2 + z")]


def test_run_product_family_is_xi_constant():
    run = run_bubble(family("x*y - z^2"))
    assert run.status == bubbler.XI_CONSTANT and run.steps == []


def test_run_smooth_input():
    run = run_bubble(family("x*y - z + t*z^2"))
    assert run.status == bubbler.ALREADY_SMOOTH and run.terminal_nvol == 4


def test_monotonicity_violation_is_raised(ex13, monkeypatch):
    fake = VolResult((2, 2, 1), Fraction(1), Fraction(5), Fraction(5), 2)
    monkeypatch.setattr(bubbler, "minimize_nvol", lambda f, n, opts: fake)
    with pytest.raises(MonotonicityViolation):
        run_bubble(ex13)


def test_compose_matches_stepwise(ex13):
    run = run_bubble(ex13)
    composed = compose_rescalings(ex13, run.steps)
    assert composed.generators == run.final_family.generators
    assert compose_rescalings(ex13, run.steps[:2]).generators == run.steps[1].new_generators


def test_generic_fiber(ex13):
    assert generic_fiber_check(ex13, Fraction(1, 3)) == "smooth"
    res = generic_fiber_check(family("x*y - z^2"), 5)
    assert res.normalized_volume == 2
    with pytest.raises(PreconditionError):
        generic_fiber_check(ex13, 0)
