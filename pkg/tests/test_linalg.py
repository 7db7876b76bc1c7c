from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from leibniz3.exactpoly import LAMBDA, Poly, parse_poly
from leibniz3.linalg import mat_vec, nullspace, nullspace_int, rank, span_basis


def oracle_rank(M) -> int:
    """Textbook row reduction over Fraction."""
    A = [[Fraction(x) for x in row] for row in M]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(
    lambda ncols: st.lists(st.lists(st.integers(-4, 4), min_size=ncols, max_size=ncols), min_size=1, max_size=6))


@given(matrices)
def test_nullspace_matches_oracle(M):
    ncols = len(M[0])
    basis = nullspace(M, ncols)
    assert len(basis) == ncols - oracle_rank(M)
    for v in basis:
        assert all(x.is_zero for x in mat_vec(M, v))


@given(matrices, st.randoms(use_true_random=False))
def test_nullspace_dim_invariant_under_row_permutation(M, rnd):
    ncols = len(M[0])
    perm = list(M)
    rnd.shuffle(perm)
    assert len(nullspace(perm, ncols)) == len(nullspace(M, ncols))
    assert len(nullspace_int(perm, ncols)) == len(nullspace_int(M, ncols))


def test_examples():
    assert nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3) == []
    assert nullspace([[1, 1]], 2) == [[Poly.const(1), Poly.const(-1)]]
    lam = Poly.var(LAMBDA)
    assert nullspace([[lam - 1, Poly.const(-1)]], 2) == [[Poly.const(1), lam - 1]]


def test_parametric_rank_is_generic():
    lam = Poly.var(LAMBDA)
    M = [[lam, Poly.const(1)], [Poly.const(1), lam]]
    assert rank(M, 2) == 2


def test_parametric_nullspace_vectors_vanish():
    rng = random.Random(3)
    lam = Poly.var(LAMBDA)
    M = [[Poly.const(rng.randint(-3, 3)) + lam * rng.randint(-2, 2) for _ in range(4)] for _ in range(2)]
    for v in nullspace(M, 4, generic=True):
        assert all(x.is_zero for x in mat_vec(M, v))


def test_span_basis():
    polys = [parse_poly(t) for t in ("x_1_1 + x_1_2", "x_1_1 - x_1_2", "x_1_1", "lambda*x_1_2")]
    assert len(span_basis(polys)) == 2
