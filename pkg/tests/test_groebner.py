import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bubblekit.errors import BasisTooLargeError
from bubblekit.groebner import (
    MonomialOrder,
    buchberger,
    count_below,
    initial_ideal,
    leading_monomial_ideal,
    normal_form,
    standard_monomial_count,
)
from bubblekit.polycore import Polynomial, parse_polynomial

from conftest import EX13, P, polynomials

XY = ("x", "y")
XYZ = ("x", "y", "z")


def Q(text, ring=XYZ):
    return parse_polynomial(text, ring)


def brute_standard(leads, weights, bound):
    """Exhaustive listing of exponent tuples of weight < bound outside <leads>."""
    top = [int(bound / w) + 1 for w in weights]
    n = 0
    for e in itertools.product(*[range(k + 1) for k in top]):
        if sum(a * w for a, w in zip(e, weights)) >= bound:
            continue
        if any(all(a >= b for a, b in zip(e, m)) for m in leads):
            continue
        n += 1
    return n


def graded_principal_count(g, weights, bound):
    """Count for a w-homogeneous principal ideal via N(d) - N(d - deg g)."""
    d0 = sum(a * w for a, w in zip(next(iter(g.terms)), weights))
    top = [int(bound / w) + 1 for w in weights]
    per_degree = {}
    for e in itertools.product(*[range(k + 1) for k in top]):
        d = sum(a * w for a, w in zip(e, weights))
        if d < bound:
            per_degree[d] = per_degree.get(d, 0) + 1
    return sum(c - per_degree.get(d - d0, 0) for d, c in per_degree.items())


def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.ring)
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(s**k for s, k in zip(syms, e))
               for e, c in p.terms.items()), syms


def up_to_unit(gens):
    return {g.sign_normalized() for g in gens}


def test_principal_is_own_basis():
    f = P("x*y - z^4")
    assert up_to_unit(buchberger([f]).elements) == {f.sign_normalized()}
    assert up_to_unit(buchberger([f], MonomialOrder((1, 2, 2, 1))).elements) == {f.sign_normalized()}


def test_hand_computed_basis():
    gens = [Q("x^2 - y", XY), Q("x*y - 1", XY)]
    gb = buchberger(gens, MonomialOrder(None, "lex"))
    assert up_to_unit(gb.elements) == up_to_unit([Q("x - y^2", XY), Q("y^3 - 1", XY)])
    assert gb.satisfies_buchberger_criterion()
    # under grevlex y^2 outranks x, so the reduced basis keeps three elements
    gb = buchberger(gens)
    assert set(gb.elements) == {Q("y^2 - x", XY), Q("x*y - 1", XY), Q("x^2 - y", XY)}


def test_duplicates_collapse_to_monic():
    f = Q("2*x*y - z^2")
    assert buchberger([f, f]).elements == (Q("x*y - 1/2*z^2"),)


def test_normal_form_examples():
    gb = buchberger([Q("x^2 - y", XY)])
    assert normal_form(Q("x^2 - y", XY), gb).is_zero()
    assert normal_form(Q("1", XY), gb) == Q("1", XY)
    gb2 = buchberger([Q("x - y^2", XY), Q("y^3 - 1", XY)])
    assert normal_form(Q("x^3", XY), gb2) == Q("1", XY)


def test_lex_and_grevlex_agree_with_sympy():
    gens = [Q("x^2 - y", XY), Q("x*y - 1", XY)]
    for tb, so in (("grevlex", "grevlex"), ("lex", "lex")):
        ours = buchberger(gens, MonomialOrder(None, tb))
        polys, syms = zip(*[to_sympy(g) for g in gens])
        ref = sympy.groebner(list(polys), *syms[0], order=so, domain="QQ")
        assert {sympy.expand(to_sympy(g)[0]) for g in ours.elements} == set(ref.exprs)


def test_initial_ideal_examples():
    assert initial_ideal([Q("x - y", XY)], (1, 2)) == [Q("x", XY)]
    gens = [Q("x^2 - y"), Q("y^2 - z")]
    assert set(initial_ideal(gens, (1, 2, 4))) == set(gens)
    assert initial_ideal([P(EX13)], (1, 2, 2, 1)) == [P("x*y - z^4 + t*z^3")]


def test_local_basis_ignores_points_away_from_origin():
    # four points globally; only the origin survives locally
    gens = [Q("x^2 - x", XY), Q("y^2 - y", XY)]
    assert standard_monomial_count(gens, (1, 1), 50) == 1
    assert count_below(buchberger(gens).leading_monomials, (1, 1), 50) == 4
    # y = x^2 and y(y-1) = 0: multiplicity 2 at the origin, 4 in total
    gens = [Q("y - x^2", XY), Q("y^2 - y", XY)]
    assert standard_monomial_count(gens, (1, 1), 50) == 2
    assert count_below(buchberger(gens).leading_monomials, (1, 1), 50) == 4


def test_local_unit_and_unit_multiples():
    gb = buchberger([Q("x*y - 1")], MonomialOrder((1, 1, 1)))
    assert gb.is_unit()
    assert standard_monomial_count([Q("x*y - 1")], (1, 1, 1), 10) == 0
    lms = leading_monomial_ideal([Q("x + x*y")], (1, 1, 1))
    assert lms == ((1, 0, 0),)
    lms = leading_monomial_ideal([Q("(x - y^2)*(1 + x)")], (1, 1, 1))
    assert lms == ((1, 0, 0),)


def test_standard_count_examples():
    assert standard_monomial_count([Q("x*y - z^2")], (1, 1, 1), 3) == brute_standard([(0, 0, 2)], (1, 1, 1), 3) == 9
    assert standard_monomial_count([Q("z")], (1, 1, 1), 2) == 3
    assert standard_monomial_count([Q("z")], (1, 1, 1), 0) == 0


@pytest.mark.parametrize("text, w", [
    ("x*y - z^2", (1, 1, 1)),
    ("x*y - z^4", (2, 2, 1)),
    ("x*y - z^3", (3, 3, 2)),
    ("x^2 + y^3 + z^5", (15, 10, 6)),
])
@pytest.mark.parametrize("bound", [1, 7, Fraction(31, 2), 40])
def test_count_matches_graded_oracle(text, w, bound):
    g = Q(text)
    assert standard_monomial_count([g], w, bound) == graded_principal_count(g, w, bound)


def test_buchberger_cap():
    gens = [Q("x^3 + y^2*z - 2*y*z + 1"), Q("y^3 - x*z^2 + x"), Q("z^3 - x*y^2 + y")]
    assert len(buchberger(gens).elements) == 9
    with pytest.raises(BasisTooLargeError) as info:
        buchberger(gens, max_size=4)
    assert info.value.partial_size == 5


small = polynomials(ring=XYZ, max_exp=2, max_terms=3,
                    coeffs=st.integers(-3, 3).filter(bool).map(Fraction))


@settings(max_examples=40, deadline=None)
@given(st.lists(small.filter(lambda p: not p.is_zero()), min_size=1, max_size=3))
def test_global_bases_satisfy_criterion_and_match_sympy(gens):
    gb = buchberger(gens)
    assert gb.satisfies_buchberger_criterion()
    for g in gens:
        assert normal_form(g, gb).is_zero()
    polys = [to_sympy(g)[0] for g in gens]
    ref = sympy.groebner(polys, *sympy.symbols(XYZ), order="grevlex", domain="QQ")
    assert {sympy.expand(to_sympy(g)[0]) for g in gb.elements} == set(ref.exprs)


@settings(max_examples=40, deadline=None)
@given(st.lists(small.filter(lambda p: not p.is_zero() and not p.constant_term()), min_size=1, max_size=2),
       st.tuples(*[st.integers(1, 3)] * 3))
def test_local_bases_satisfy_criterion(gens, w):
    gb = buchberger(gens, MonomialOrder(w))
    assert gb.satisfies_buchberger_criterion()
    # initial ideal is stable: recomputing from the initial forms gives the same monomials
    ins = initial_ideal(gens, w)
    assert sorted(leading_monomial_ideal(ins, w)) == sorted(gb.leading_monomials)
