from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bubblekit.polycore import FamilyPresentation, Polynomial, parse_polynomial

FAMILY_RING = ("t", "x", "y", "z")
FIBER_RING = ("x", "y", "z")

EX13 = "x*y - z*(z-t)*(z-t^2)*(z-t^3)"
EX13_STEP2 = "x*y - z*(z-1)*(z-t)*(z-t^2)"
EX13_STEP3 = "x*y - z*(t^2*z-1)*(z-1)*(z-t^2)"
EX13_STEP4 = "x*y - (t^4*z-1)*(t^2*z-1)*z*(z-1)"


def family(*gens, variables=("x", "y", "z"), n=2) -> FamilyPresentation:
    return FamilyPresentation.from_strings(list(gens), list(variables), n)


def P(text, ring=FAMILY_RING) -> Polynomial:
    return parse_polynomial(text, ring)


@pytest.fixture
def ex13():
    return family(EX13)


@pytest.fixture
def ex13_step2():
    return family(EX13_STEP2)


@pytest.fixture
def ex13_step3():
    return family(EX13_STEP3)


rationals = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)


def polynomials(ring=FAMILY_RING, max_exp=3, max_terms=5, coeffs=rationals):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in ring])
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


positive_rationals = st.builds(
    Fraction, st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=6)
)


# acceptance summary: one line per criterion

_ACCEPTANCE: list = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
