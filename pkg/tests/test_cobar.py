import pytest
from hypothesis import given, settings, strategies as st

from chromatic_cobar.algebra import INTEGRAL, MOD2, ONE, ModulusSpec, P, Poly, reduce
from chromatic_cobar.cobar import (CobarElement, alpha_correction, alpha_rep, beta_tilde_rep, class_identify,
                                   cobar_basis, cobar_d, coboundary_preimage_mod2, ext_bidegree, ext_v1_generators,
                                   format_named, identify_generators, identify_named, is_coboundary_mod2,
                                   is_cocycle, named_poly, split_v1_prefix)
from chromatic_cobar.comodule import MooreQuotient, WindowSpec, dual_stunted
from chromatic_cobar.errors import NotDivisible

Z = MooreQuotient(INTEGRAL)
M2 = MooreQuotient(MOD2)


# -- d and d∘d ----------------------------------------------------------------

def test_d_v2_mod2():
    assert cobar_d(CobarElement.scalar(0, "v2"), M2) == CobarElement.scalar(1, "v1*t1^2 + v1^2*t1")


def test_d_v1_integral():
    assert cobar_d(CobarElement.scalar(0, "v1"), Z) == CobarElement.scalar(1, "2*t1")


@pytest.mark.parametrize("text", ["v2", "v1*v2", "v1^3 + v2", "v2^2"])
@pytest.mark.parametrize("pres", [Z, M2], ids=["Z", "mod2"])
def test_d_squared_zero_moore(text, pres):
    e = CobarElement.scalar(0, text)
    assert not cobar_d(cobar_d(e, pres), pres)


def test_d_squared_zero_window():
    w = dual_stunted(WindowSpec(12, 16))
    z = cobar_d(CobarElement.make(0, {12: ONE}), w)
    assert z.cell(15) == P("v1*t1^2 + v1^2*t1")
    assert not cobar_d(z, w)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.sampled_from(cobar_basis(0, 2 * n, INTEGRAL))),
       st.integers(-3, 3).filter(bool))
def test_d_squared_zero_random_zero_cochains(mono, c):
    e = CobarElement.make(0, {0: Poly.monomial(mono, c)})
    assert not cobar_d(cobar_d(e, Z), Z)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.dictionaries(st.integers(0, 3), st.sampled_from(["1", "v1", "v1^2", "v2"]),
                                          min_size=1, max_size=2))
def test_d_squared_zero_random_window(a, terms):
    w = dual_stunted(WindowSpec(a, a + 5))
    e = CobarElement.make(0, {a + k: P(p) for k, p in terms.items()})
    assert not cobar_d(cobar_d(e, w), w)


def test_cocycle_checks():
    assert is_cocycle(CobarElement.scalar(1, "t1"), Z)
    assert not is_cocycle(CobarElement.scalar(1, "t2"), Z)
    assert is_cocycle(CobarElement.scalar(1, "v1*t2 + v2*t1 + v1*t1^3"), M2)


def test_element_json_roundtrip():
    e = CobarElement.make(1, {3: P("t1"), 5: P("v1*t1^2")})
    assert CobarElement.from_json(e.to_json()) == e
    assert e.lowest_cell() == 3


# -- Ext ------------------------------------------------------------------------

@pytest.mark.parametrize("s,t,factors", [(0, 0, (0,)), (1, 2, (2,)), (1, 4, (4,)), (1, 6, (2,)), (1, 8, (16,))])
def test_ext_integral(s, t, factors):
    assert ext_bidegree(s, t, Z).invariant_factors == factors


@pytest.mark.parametrize("s,t,rank", [(0, 2, 1), (0, 6, 1), (1, 2, 1), (1, 4, 2), (1, 8, 3)])
def test_ext_mod2(s, t, rank):
    r = ext_bidegree(s, t, M2)
    assert r.invariant_factors == (2,) * rank
    for rep in r.representatives:
        assert is_cocycle(rep, M2)


def test_ext_rejects_bad_requests():
    with pytest.raises(ValueError):
        ext_bidegree(2, 4, Z)
    with pytest.raises(ValueError):
        ext_bidegree(1, 4, MooreQuotient(ModulusSpec.parse("4,v1")))


def test_class_identify():
    assert class_identify(alpha_rep(2, 2), ext_bidegree(1, 4, Z)) == (1,)
    assert class_identify(CobarElement.scalar(1, "t1"), ext_bidegree(1, 2, Z)) == (1,)
    assert class_identify(CobarElement.scalar(1, "t2"), ext_bidegree(1, 6, M2)) == "not a cocycle"
    assert class_identify(alpha_rep(2, 1), ext_bidegree(1, 4, Z)) == (2,)


def test_module_generators_degree_8():
    gens = ext_v1_generators(1, 8)
    assert [str(r.cell(0)) for r in gens.representatives] == ["v1*t2 + v2*t1 + v1*t1^3", "t1^4"]
    assert identify_generators(CobarElement.scalar(1, "t1^4 + v1^3*t1"), gens) == (0, 1)


# -- mod-2 classes and names ------------------------------------------------------

def test_coboundaries_mod2():
    assert is_coboundary_mod2(P("v1*t1^2 + v1^2*t1"), 6)
    assert not is_coboundary_mod2(P("t1^2"), 4)
    pre = coboundary_preimage_mod2(P("v1*t1^2 + v1^2*t1"), 6)
    assert reduce(cobar_d(CobarElement.scalar(0, pre), M2).cell(0), MOD2) == P("v1*t1^2 + v1^2*t1")
    assert coboundary_preimage_mod2(P("t1"), 2) is None


def test_identify_named():
    assert identify_named(P("t1"), 2) == ["a1"]
    assert identify_named(P("t1^2 + v1*t1"), 4) == ["b1"]
    assert identify_named(P("v1*t1"), 4) == ["v1*a1"]
    assert identify_named(P("v1*t2 + v2*t1 + v1*t1^3"), 8) == ["x7"]
    assert identify_named(P("v1*t1^2 + v1^2*t1"), 6) == ["0"]
    assert identify_named(P("t1^2"), 4) == []


def test_v1_squared_b22_is_coboundary():
    assert is_coboundary_mod2(named_poly("v1^2*b22"), 12)
    assert set(identify_named(named_poly("v1^2*x7"), 12)) >= {"v1^2*x7", "v1^2*(x7+b22)"}


def test_name_helpers():
    assert split_v1_prefix("v1^3*(x7+b22)") == (3, "x7+b22")
    assert split_v1_prefix("v1*a1") == (1, "a1")
    assert format_named(2, "x7+b22") == "v1^2*(x7+b22)"
    assert named_poly("v1*a1") == P("v1*t1")


# -- Greek letter representatives -----------------------------------------------

@pytest.mark.parametrize("i,j", [(1, 1), (2, 2), (3, 1), (4, 4), (4, 3), (6, 3)])
def test_alpha_reps_are_cocycles(i, j):
    e = alpha_rep(i, j)
    assert is_cocycle(e, Z)
    assert e.degree(Z) == 2 * i
    assert reduce(e.cell(0), MOD2) != Poly.const(0)


def test_alpha_leading_terms():
    assert alpha_rep(1, 1).cell(0) == P("t1")
    assert alpha_rep(2, 2).cell(0) == P("v1*t1 + t1^2")
    assert alpha_correction(2, 1) == P("v1^2")


def test_alpha_nonexistence():
    with pytest.raises(NotDivisible):
        alpha_rep(2, 3)
    with pytest.raises(ValueError):
        alpha_rep(0, 1)


@pytest.mark.parametrize("i,j", [(1, 1), (2, 2), (2, 1), (4, 4)])
def test_beta_reps_are_mod2_cocycles(i, j):
    e = beta_tilde_rep(i, j)
    assert is_cocycle(e, M2)
    assert e.degree(M2) == 6 * i - 2 * j


def test_beta_examples():
    assert beta_tilde_rep(1, 1).cell(0) == P("v1*t1 + t1^2")
    assert beta_tilde_rep(2, 2).cell(0) == P("v1^2*t1^2 + t1^4")
    with pytest.raises(NotDivisible):
        beta_tilde_rep(1, 2)
