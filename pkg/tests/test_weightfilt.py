from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bubblekit.errors import ZeroPolynomialError
from bubblekit.polycore import parse_polynomial
from bubblekit.weightfilt import (
    WeightData,
    graded_family_ideal,
    initial_form,
    primitive_integer_vector,
    weighted_degree,
)

from conftest import EX13, FIBER_RING, P, family, polynomials, positive_rationals

weights4 = st.tuples(*[positive_rationals] * 4)


def test_weighted_degree_examples():
    assert weighted_degree(P("x*y - z^4"), WeightData.of((2, 2, 1), 7)) == 4
    assert weighted_degree(P(EX13), WeightData.of((2, 2, 1), 1)) == 4
    assert weighted_degree(P("t^6*z"), WeightData.of((2, 2, 1), Fraction(1, 4))) == Fraction(5, 2)
    with pytest.raises(ZeroPolynomialError):
        weighted_degree(P("0"), (1, 1, 1, 1))


def test_term_weights_of_example_family():
    # brute enumeration of the 9 monomial weights at (1; 2,2,1)
    F = P(EX13)
    ws = sorted(int(sum(a * b for a, b in zip(e, (1, 2, 2, 1)))) for e in F.terms)
    assert ws == [4, 4, 4, 5, 5, 6, 6, 7, 7]


def test_initial_form_examples():
    f = parse_polynomial("x*y - z^4", FIBER_RING)
    data = initial_form(f, (1, 1, 1))
    assert data.degree == 2 and data.initial_form == parse_polynomial("x*y", FIBER_RING)
    F = P(EX13)
    assert initial_form(F, WeightData.of((2, 2, 1), 1)).initial_form == P("x*y - z^4 + t*z^3")
    assert initial_form(F, WeightData.of((2, 2, 1), 2)).initial_form == P("x*y - z^4")


def test_graded_family_ideal_examples():
    fam = family(EX13)
    assert graded_family_ideal(fam, WeightData.of((2, 2, 1), 1)) == [P("x*y - z^4 + t*z^3")]
    assert graded_family_ideal(fam, WeightData.of((2, 2, 1), 3)) == [P("x*y - z^4")]
    prod = family("x*y - z^4")
    assert graded_family_ideal(prod, WeightData.of((1, 1, 1), 5)) == [P("x*y")]


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(3, 2), Fraction(3, 2), 1]) == (3, 3, 2)
    assert primitive_integer_vector([4, 4, 2]) == (2, 2, 1)


@settings(max_examples=500, deadline=None)
@given(polynomials(), weights4, positive_rationals)
def test_scale_equivariance(f, w, lam):
    if f.is_zero():
        return
    assert weighted_degree(f, tuple(v * lam for v in w)) == lam * weighted_degree(f, w)
    assert initial_form(f, tuple(v * lam for v in w)).initial_form == initial_form(f, w).initial_form


@settings(max_examples=500, deadline=None)
@given(polynomials(), weights4)
def test_initial_form_idempotent(f, w):
    if f.is_zero():
        return
    g = initial_form(f, w)
    again = initial_form(g.initial_form, w)
    assert again.initial_form == g.initial_form
    assert again.degree == g.degree


@settings(max_examples=500, deadline=None)
@given(polynomials(max_terms=4), polynomials(max_terms=4), weights4)
def test_initial_form_product_rule(f, g, w):
    if f.is_zero() or g.is_zero():
        return
    lhs = initial_form(f * g, w)
    assert lhs.initial_form == initial_form(f, w).initial_form * initial_form(g, w).initial_form
    assert lhs.degree == weighted_degree(f, w) + weighted_degree(g, w)
