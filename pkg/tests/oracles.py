"""Independent brute-force oracles over Fraction, used to check the library.

They work from the raw structure constants of a rational table and share no
code with the package beyond reading ``T.const``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache


def consts(T) -> list:
    n = T.dim
    return [[[Fraction(T.const(i, j, l).constant_value) for l in range(1, n + 1)] for j in range(1, n + 1)]
            for i in range(1, n + 1)]


def rank(rows) -> int:
    A = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
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


def product(C, a, b):
    n = len(C)
    return [sum(a[i] * b[j] * C[i][j][l] for i in range(n) for j in range(n)) for l in range(n)]


def leib_dim(C) -> int:
    n = len(C)
    vecs = [C[i][i] for i in range(n)]
    vecs += [[C[i][j][l] + C[j][i][l] for l in range(n)] for i in range(n) for j in range(i + 1, n)]
    return rank(vecs)


def right_annihilator_dim(C) -> int:
    n = len(C)
    return n - rank([[C[i][j][l] for j in range(n)] for i in range(n) for l in range(n)])


def derivation_dim(C) -> int:
    """Solve D(e_i e_j) = D(e_i) e_j + e_i D(e_j) for the n^2 entries of D."""
    n = len(C)
    rows = []
    for i, j, l in itertools.product(range(n), repeat=3):
        row = [Fraction(0)] * (n * n)
        # D e_k = sum_a D[a][k] e_a, unknown D[a][k] in column a*n + k
        for k in range(n):
            row[l * n + k] += C[i][j][k]
        for a in range(n):
            row[a * n + i] -= C[a][j][l]
            row[a * n + j] -= C[i][a][l]
        rows.append(row)
    return n * n - rank(rows)


def nilpotency_class(C, max_len: int = 6):
    """Least k such that every bracketed product of k basis elements is 0."""
    n = len(C)
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    @lru_cache(maxsize=None)
    def products(k):
        if k == 1:
            return tuple(tuple(b) for b in basis)
        out = set()
        for a in range(1, k):
            for u in products(a):
                for v in products(k - a):
                    out.add(tuple(product(C, list(u), list(v))))
        return tuple(out)

    for k in range(2, max_len + 1):
        if all(not any(p) for p in products(k)):
            return k
    return None
