import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torex.exactlin import (
    cokernel, det, hermite_rows, integer_inverse, integer_kernel, inverse, matmul, nullspace,
    rational_rank, rref, smith_normal_form, solve_rational, transpose,
)


def int_matrix(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def leibniz_det(M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= M[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def minor_rank(M):
    rows, cols = len(M), len(M[0])
    for k in range(min(rows, cols), 0, -1):
        for R in itertools.combinations(range(rows), k):
            for C in itertools.combinations(range(cols), k):
                if leibniz_det([[M[i][j] for j in C] for i in R]):
                    return k
    return 0


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_det_matches_leibniz(M):
    assert det(M) == leibniz_det(M)


@given(int_matrix(max_rows=3, max_cols=4))
def test_rank_matches_minors(M):
    assert rational_rank(M) == minor_rank(M)


@given(int_matrix())
def test_smith_normal_form(M):
    res = smith_normal_form(M)
    assert matmul(matmul(res.U, M), res.V) == res.D
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    diag = [res.D[i][i] for i in range(min(len(M), len(M[0])))]
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == minor_rank(M)
    for i, row in enumerate(res.D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0


def test_smith_pinned():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).invariant_factors[:3] == (2, 6, 12)


@given(int_matrix(max_rows=3, max_cols=3))
def test_nullspace_and_solve(M):
    N = nullspace(M)
    assert len(N) == len(M[0]) - rational_rank(M)
    for v in N:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)
    b = [sum(row) for row in M]
    x = solve_rational(M, b)
    assert x is not None
    assert [sum(Fraction(a) * c for a, c in zip(row, x)) for row in M] == b


def test_solve_inconsistent():
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None


def test_rref_pivots_leftmost():
    R, piv = rref([[0, 2, 4], [0, 1, 3]])
    assert piv == [1, 2]
    assert R[0][1] == 1 and R[1][2] == 1


def test_inverse_and_integer_inverse():
    M = [[2, 1], [1, 1]]
    assert integer_inverse(M) == [[1, -1], [-1, 2]]
    inv = inverse([[2, 0], [0, 4]])
    assert inv == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    with pytest.raises(ValueError):
        integer_inverse([[2, 0], [0, 1]])


def minor_gcd(M, k):
    from math import gcd
    g = 0
    for R in itertools.combinations(range(len(M)), k):
        for C in itertools.combinations(range(len(M[0])), k):
            g = gcd(g, leibniz_det([[M[i][j] for j in C] for i in R]))
    return g


@given(int_matrix(max_rows=3, max_cols=3))
def test_hermite_rows_span_same_lattice(M):
    H = hermite_rows(M)
    assert len(H) == rational_rank(M)
    if not H:
        assert not any(any(row) for row in M)
        return
    # each original row is an integer combination of H and vice versa
    def in_lattice(v, B):
        if not any(v):
            return True
        x = solve_rational(transpose(B), v)
        return x is not None and all(Fraction(c).denominator == 1 for c in x)
    assert all(in_lattice(row, H) for row in M)
    # equal index: gcd of maximal minors is a lattice invariant
    assert minor_gcd(M, len(H)) == minor_gcd(H, len(H))


@given(int_matrix(max_rows=2, max_cols=3))
def test_integer_kernel(M):
    K = integer_kernel(M)
    assert len(K) == len(M[0]) - rational_rank(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    # saturated: a rational kernel vector with integer entries lies in the span
    for v in nullspace(M):
        den = 1
        for c in v:
            den = den * Fraction(c).denominator
        w = [int(c * den) for c in v]
        x = solve_rational(transpose(K), w)
        assert x is not None and all(Fraction(c).denominator == 1 for c in x)


def full_row_rank(max_rows=3, max_cols=4):
    return int_matrix(max_rows, max_cols, -4, 4).filter(lambda M: minor_rank(M) == len(M))


@given(full_row_rank())
def test_cokernel_box_oracle(M):
    """Two vectors are identified iff their difference is an integer combination of rows."""
    n = len(M[0])
    G = cokernel(transpose(M), ambient=n)
    box = list(itertools.product(range(-2, 3), repeat=n))[:60]
    zero = G.project([0] * n)
    for row in M:
        assert G.project(row) == zero
    for x in box:
        free, tors = G.project(list(x))
        y = G.section(free, tors)
        assert G.project(list(y)) == (free, tors)
        diff = [a - b for a, b in zip(x, y)]
        w = solve_rational(transpose(M), diff)
        assert w is not None and all(Fraction(c).denominator == 1 for c in w)


def test_cokernel_torsion_line():
    G = cokernel([[2], [-2]], ambient=2)
    assert G.free_rank == 1 and G.torsion == (2,)
    a, b = G.project([1, 0]), G.project([0, 1])
    assert a[0] == b[0] and a[1] != b[1]
