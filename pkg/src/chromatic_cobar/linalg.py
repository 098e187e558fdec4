"""Exact linear algebra for cobar matrices.

Two engines:
  * F2 via Python-int bitsets (vectors are ints, bit k = k-th basis element);
  * Smith normal form over Z/2^K, which is Z_(2) as long as every invariant
    factor is strictly below 2^K (callers double K until that holds).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Matrix = List[List[int]]


# -- F2 --------------------------------------------------------------------

class F2Span:
    """Row echelon basis over F2 with combination tracking.

    Every stored vector remembers, as a bitmask, which inserted vectors
    it is a sum of; ``reduce`` reports the combination it used.
    """

    def __init__(self):
        self._pivots: Dict[int, Tuple[int, int]] = {}  # pivot bit -> (vector, combo)
        self._count = 0

    def __len__(self):
        return len(self._pivots)

    def reduce(self, vec: int) -> Tuple[int, int]:
        """(residual, combo): vec = residual + sum of the inserted vectors in combo."""
        res = combo = 0
        while vec:
            top = vec.bit_length() - 1
            hit = self._pivots.get(top)
            if hit is None:
                res |= 1 << top
                vec ^= 1 << top
            else:
                vec ^= hit[0]
                combo ^= hit[1]
        return res, combo

    def add(self, vec: int) -> bool:
        """Insert the next vector (tag = insertion index); True if it was independent."""
        tag = self._count
        self._count += 1
        res, combo = self.reduce(vec)
        if not res:
            return False
        self._pivots[res.bit_length() - 1] = (res, combo ^ (1 << tag))
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0


def f2_rank(vectors: Sequence[int]) -> int:
    sp = F2Span()
    return sum(1 for v in vectors if sp.add(v))


def f2_kernel(columns: Sequence[int]) -> List[int]:
    """Basis of {x : sum x_k columns[k] = 0}; x encoded as a bitmask over column indices."""
    sp = F2Span()
    kernel = []
    for k, col in enumerate(columns):
        _, combo = sp.reduce(col)
        if not sp.add(col):
            kernel.append(combo ^ (1 << k))
    return kernel


def f2_solve(columns: Sequence[int], target: int) -> Optional[int]:
    """Some x with sum x_k columns[k] = target, or None."""
    sp = F2Span()
    for col in columns:
        sp.add(col)
    res, combo = sp.reduce(target)
    return combo if res == 0 else None


# -- Z/2^K -----------------------------------------------------------------

def _nu(x: int) -> int:
    return (x & -x).bit_length() - 1


def snf_mod2k(A: Matrix, ncols: int, K: int):
    """Smith form of A (rows x ncols) over Z/2^K.

    Returns (vals, P, V) with P*A*V = diag(2^vals[0], 2^vals[1], ...) mod 2^K.
    """
    mod = 1 << K
    m = len(A)
    n = ncols
    A = [[x % mod for x in row] for row in A]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    vals: List[int] = []
    r = 0
    while r < m and r < n:
        best = None
        for i in range(r, m):
            row = A[i]
            for j in range(r, n):
                x = row[j]
                if x:
                    v = _nu(x)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        A[r], A[i] = A[i], A[r]
        P[r], P[i] = P[i], P[r]
        if j != r:
            for row in A:
                row[r], row[j] = row[j], row[r]
            for row in V:
                row[r], row[j] = row[j], row[r]
        uinv = pow(A[r][r] >> v, -1, mod)
        A[r] = [(x * uinv) % mod for x in A[r]]
        P[r] = [(x * uinv) % mod for x in P[r]]
        pr, ar = P[r], A[r]
        for i2 in range(r + 1, m):
            x = A[i2][r]
            if x:
                f = x >> v
                A[i2] = [(a - f * b) % mod for a, b in zip(A[i2], ar)]
                P[i2] = [(a - f * b) % mod for a, b in zip(P[i2], pr)]
        for j2 in range(r + 1, n):
            x = ar[j2]
            if x:
                f = x >> v
                ar[j2] = 0
                for row in V:
                    row[j2] = (row[j2] - f * row[r]) % mod
        vals.append(v)
        r += 1
    return vals, P, V


def mat_vec(A: Matrix, x: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def column(V: Matrix, j: int) -> List[int]:
    return [row[j] for row in V]


def solve_mod2k(A: Matrix, ncols: int, b: Sequence[int], K: int) -> Optional[List[int]]:
    """Some x in [0, 2^K)^ncols with A x = b mod 2^K, or None."""
    mod = 1 << K
    vals, P, V = snf_mod2k(A, ncols, K)
    pb = [x % mod for x in mat_vec(P, b)]
    y = [0] * ncols
    for i, v in enumerate(vals):
        if pb[i] % (1 << v):
            return None
        y[i] = pb[i] >> v
    for i in range(len(vals), len(pb)):
        if pb[i]:
            return None
    return [x % mod for x in mat_vec(V, y)]


# -- exact rational rank / kernel -----------------------------------------

def rational_kernel(A: Matrix, ncols: int) -> List[List[int]]:
    """Primitive integer basis of the rational kernel of A (reduced echelon order)."""
    rows = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(_primitive(vec))
    return basis


def rational_rank(A: Matrix, ncols: int) -> int:
    return ncols - len(rational_kernel(A, ncols))


def _primitive(vec: Sequence[Fraction]) -> List[int]:
    from math import gcd, lcm

    den = 1
    for x in vec:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints
