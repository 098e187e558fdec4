import random

import pytest

from chromatic_cobar.aahss import (AAHSSClass, aahss_differential, expected_differential, greek_degree,
                                   greek_existence, greek_internal_degree, indeterminacy_recompute,
                                   indeterminacy_table, james_normalize, matches_expected, recompute_row,
                                   table_row, v1_propagate)
from chromatic_cobar.algebra import nu2
from chromatic_cobar.cobar import alpha_rep, is_coboundary_mod2, named_poly
from chromatic_cobar.errors import NotDivisible, OutOfTable, VanishingProduct


def _key(rec):
    return rec.i, rec.r, rec.names, rec.nu2


# -- single differentials -----------------------------------------------------------

def test_d1_on_odd_cells():
    rec = aahss_differential(0, -3)
    assert (rec.r, rec.names) == (1, ("a1",))
    assert rec.target == "a1[-9]"


def test_d2_and_d4_rows():
    assert aahss_differential(0, -2).format_text() == "d_2(1[-5]) = b1[-9]"
    assert aahss_differential(0, -4).format_text() == "d_4(1[-9]) = (x7+b22)[-17]"
    assert aahss_differential(0, -8).target == "v1*(x7+b22)[-27]"


def test_exceptional_d3_row():
    rec = aahss_differential(1, -3)
    assert (rec.r, rec.names[0]) == (3, "x7")


def test_k_at_least_4_carries_v1_power():
    rec = aahss_differential(0, -16)
    assert rec.r == 6
    assert "v1^2*x7" in rec.names and "v1^2*(x7+b22)" in rec.names


def test_no_differential_on_the_bottom_cell():
    rec = aahss_differential(1, -1)
    assert rec.r is None and rec.target == "none"
    assert "no differential" in rec.format_text()


def test_record_json():
    assert aahss_differential(0, -2).to_json() == {"r": 2, "source": "1[-5]", "target": "b1[-9]",
                                                   "names": ["b1"], "nu2": 1}


def test_class_names():
    assert AAHSSClass(0, -4).name == "1[-9]"
    assert AAHSSClass(3, -2).name == "v1^3[-5]"
    assert AAHSSClass(3, -2).cell == 2


def test_targets_are_nonzero_and_page_is_cell_drop():
    for i in range(3):
        for m in range(-12, 0):
            rec = aahss_differential(i, m)
            if rec.r is None:
                continue
            assert rec.target_cell == 2 * (m - rec.r) - 1
            assert not is_coboundary_mod2(named_poly(rec.names[0]), 2 * i + 2 * rec.r)


@pytest.mark.parametrize("i", range(5))
def test_small_rows_match_stated_formulas(i):
    for m in range(-16, 0):
        assert matches_expected(aahss_differential(i, m)), (i, m)


# -- periodicity ------------------------------------------------------------------------

def test_james_normalize():
    assert james_normalize(-40, 5)[0] == -8
    mp, w = james_normalize(-3, 1)
    assert mp == -1 and (w.a, w.b) == (1, 3)


def test_periodicity_oracle():
    rng = random.Random(7)
    for _ in range(20):
        m = -rng.randint(1, 200)
        i = rng.randint(0, 3)
        shifted = m - 2 ** 12
        assert _key(aahss_differential(i, m)) == _key(aahss_differential(i, shifted)), (i, m)


def test_normalized_matches_direct_window():
    for i in range(3):
        for m in range(-12, 0):
            direct = aahss_differential(i, m, normalize=False)
            assert _key(direct) == _key(aahss_differential(i, m)), (i, m)


# -- v1 propagation -----------------------------------------------------------------------

def test_propagate_d1():
    out = v1_propagate(aahss_differential(0, -3))
    assert out.format_text() == "d_1(v1[-9]) = v1*a1[-11]"


def test_propagate_d2_vanishes():
    with pytest.raises(VanishingProduct) as info:
        v1_propagate(aahss_differential(0, -2))
    assert info.value.record.format_text() == "d_3(v1[-7]) = x7[-13]"


def test_double_propagation():
    once = v1_propagate(aahss_differential(0, -5))
    twice = v1_propagate(once)
    assert _key(twice) == _key(aahss_differential(2, -7))


def test_propagation_coherence():
    for i in range(3):
        for m in range(-12, 0):
            rec = aahss_differential(i, m)
            if rec.r is None:
                continue
            try:
                out = v1_propagate(rec)
            except VanishingProduct:
                continue
            assert _key(out) == _key(aahss_differential(i + 1, m - 1))


def test_propagate_requires_a_differential():
    with pytest.raises(ValueError):
        v1_propagate(aahss_differential(1, -1))


# -- Greek letters ------------------------------------------------------------------------

def test_existence_predicate():
    assert greek_existence(4, 4)
    assert not greek_existence(4, 5)
    assert not greek_existence(0, 1)


def test_existence_predicate_is_necessary():
    # whenever the predicate fails, no correction makes the cocycle divisible
    for i in (1, 2, 3, 4, 6, 8):
        j = nu2(i) + 3
        assert not greek_existence(i, j)
        with pytest.raises(NotDivisible):
            alpha_rep(i, j)


def test_valuation_lemma():
    assert all(2 * nu2(i) <= 3 * i - 4 for i in range(2, 2 ** 12 + 1))


def test_greek_degrees():
    assert greek_degree("a", (1, 1)) == (1, 1)
    assert greek_degree("b", (4, 3)) == (16, 2)
    assert greek_internal_degree("b", (2, 2)) == (2, 10)
    with pytest.raises(ValueError):
        greek_degree("g", (1, 1))


# -- indeterminacy ---------------------------------------------------------------------------

@pytest.mark.parametrize("a,v,gen", [(4, 2, "(x7+b22)"), (7, 6, "-"), (2, 0, "v1*a1"), (3, 1, "-"),
                                     (5, 1, "v1*x7"), (6, 3, "v1^2*x7"), (8, 0, "v1^7*a1")])
def test_table_rows(a, v, gen):
    assert table_row(a, v).generator == gen


def test_table_errors():
    with pytest.raises(OutOfTable):
        table_row(1, 0)
    with pytest.raises(OutOfTable):
        recompute_row(1, 0)


def test_indeterminacy_lookup():
    assert indeterminacy_table(2, 2).generator == "x7"
    assert indeterminacy_table(1, 1).generator == "v1*a1"


@pytest.mark.parametrize("i,j", [(1, 1), (2, 3), (2, 2), (4, 4), (4, 3), (3, 1)])
def test_recompute_matches_table(i, j):
    assert indeterminacy_recompute(i, j) == indeterminacy_table(i, j)


def test_expected_differential_shape():
    assert expected_differential(0, -3) == (1, "a1")
    assert expected_differential(2, -2) == (None, None)
    assert expected_differential(1, -9) == (5, "v1^2*x7")
