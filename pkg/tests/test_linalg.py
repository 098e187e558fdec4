from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from chromatic_cobar.linalg import (F2Span, f2_kernel, f2_rank, f2_solve, mat_vec, rational_kernel, rational_rank,
                                    snf_mod2k, solve_mod2k)

bitvecs = st.lists(st.integers(0, 2 ** 6 - 1), min_size=1, max_size=6)


def _span(vectors):
    out = set()
    for coeffs in product([0, 1], repeat=len(vectors)):
        acc = 0
        for c, v in zip(coeffs, vectors):
            if c:
                acc ^= v
        out.add(acc)
    return out


@settings(max_examples=80)
@given(bitvecs)
def test_f2_rank_matches_span_size(vectors):
    assert 2 ** f2_rank(vectors) == len(_span(vectors))


@settings(max_examples=80)
@given(bitvecs)
def test_f2_kernel(vectors):
    ker = f2_kernel(vectors)
    assert len(ker) == len(vectors) - f2_rank(vectors)
    for x in ker:
        acc = 0
        for k, v in enumerate(vectors):
            if x >> k & 1:
                acc ^= v
        assert acc == 0


@settings(max_examples=80)
@given(bitvecs, st.integers(0, 2 ** 6 - 1))
def test_f2_solve(vectors, target):
    x = f2_solve(vectors, target)
    assert (x is not None) == (target in _span(vectors))
    if x is not None:
        acc = 0
        for k, v in enumerate(vectors):
            if x >> k & 1:
                acc ^= v
        assert acc == target


def test_f2span_combo():
    sp = F2Span()
    assert sp.add(0b011) and sp.add(0b110)
    assert not sp.add(0b101)
    res, combo = sp.reduce(0b101)
    assert res == 0 and combo == 0b11
    assert sp.contains(0b110) and not sp.contains(0b001)


matrices = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-8, 8), min_size=n, max_size=n),
                                                        min_size=1, max_size=4))


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_is_diagonalization(A):
    K = 8
    mod = 1 << K
    n = len(A[0])
    vals, P, V = snf_mod2k(A, n, K)
    PAV = [[x % mod for x in row] for row in _matmul(_matmul(P, A), V)]
    for i, row in enumerate(PAV):
        for j, x in enumerate(row):
            want = (1 << vals[i]) % mod if i == j and i < len(vals) else 0
            assert x == want
    assert vals == sorted(vals)


@settings(max_examples=80, deadline=None)
@given(matrices, st.data())
def test_solve_mod2k_oracle(A, data):
    K = 3
    n = len(A[0])
    b = data.draw(st.lists(st.integers(0, 7), min_size=len(A), max_size=len(A)))
    x = solve_mod2k(A, n, b, K)
    solvable = any(all((r - t) % 8 == 0 for r, t in zip(mat_vec(A, y), b)) for y in product(range(8), repeat=n))
    assert (x is not None) == solvable
    if x is not None:
        assert all((r - t) % 8 == 0 for r, t in zip(mat_vec(A, x), b))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rational_kernel(A):
    n = len(A[0])
    ker = rational_kernel(A, n)
    for v in ker:
        assert mat_vec(A, v) == [0] * len(A)
    assert rational_rank(A, n) + len(ker) == n


def test_rational_kernel_is_primitive():
    assert rational_kernel([[2, 4]], 2) == [[-2, 1]]
    assert rational_kernel([[Fraction(1, 2), Fraction(1, 3)]], 2) in ([[-2, 3]], [[2, -3]])
