"""Fraction-free linear algebra over Q and over fraction fields Q(params).

Matrices are lists of rows; entries may be ``int``, ``Fraction`` or
:class:`~leibniz3.exactpoly.Poly`.  Constant matrices go through the integer
kernel, parametric ones through a Poly-valued Bareiss/Gauss-Jordan sweep.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactpoly import ONE, ZERO, Poly, as_poly, gcd_all
from .kernels import ff_gauss_jordan_int


class DegeneratePivotError(ArithmeticError):
    """No pivot is available whose nonvanishing is known.

    Raised when every remaining candidate pivot is a non-constant parameter
    polynomial that is not a product of declared nonvanishing factors.  The
    caller should specialise the parameters or declare a side condition.
    """

    def __init__(self, poly: Poly):
        super().__init__(f"pivot {poly} may vanish; specialise or declare it nonzero")
        self.poly = poly


def _is_constant_matrix(M) -> bool:
    for row in M:
        for x in row:
            if isinstance(x, Poly) and not x.is_constant:
                return False
    return True


def _to_int_rows(M) -> list[list[int]]:
    out = []
    for row in M:
        vals = [x.constant_value if isinstance(x, Poly) else Fraction(x) for x in row]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        out.append([int(v * den) for v in vals])
    return out


def _primitive_int(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return v
    first = next(x for x in v if x)
    if first < 0:
        g = -g
    return [x // g for x in v]


def _is_unit(p: Poly, nonvanishing: Sequence[Poly]) -> bool:
    q = p
    progress = True
    while not q.is_constant and progress:
        progress = False
        for f in nonvanishing:
            if f.is_constant:
                continue
            try:
                q = q.divexact(f)
            except ValueError:
                continue
            progress = True
    return q.is_constant and not q.is_zero


def _poly_gauss_jordan(M, ncols, nonvanishing, generic):
    rows = [[as_poly(x) for x in row] for row in M]
    rows = [r for r in rows if any(not x.is_zero for x in r)]
    prev = ONE
    pivots: list[int] = []
    k = 0
    free = set(range(ncols))
    while k < len(rows):
        cands = [
            (x.degree(), len(x), i, c)
            for i in range(k, len(rows))
            for c in sorted(free)
            if not (x := rows[i][c]).is_zero
        ]
        if not cands:
            break
        cands.sort()
        chosen = next((t for t in cands if _is_unit(rows[t[2]][t[3]], nonvanishing)), None)
        if chosen is None:
            if not generic:
                raise DegeneratePivotError(rows[cands[0][2]][cands[0][3]])
            chosen = cands[0]
        _, _, best, c = chosen
        rows[k], rows[best] = rows[best], rows[k]
        prow = rows[k]
        p = prow[c]
        kept = []
        for i, row in enumerate(rows):
            if i == k:
                kept.append(row)
                continue
            f = row[c]
            if f.is_zero:
                new = row if p == prev else [(p * x).divexact(prev) for x in row]
            else:
                new = [(p * row[j] - f * prow[j]).divexact(prev) for j in range(ncols)]
            if i < k or any(not x.is_zero for x in new):
                kept.append(new)
        rows = kept
        pivots.append(c)
        free.discard(c)
        prev = p
        k += 1
    return rows[:k], pivots, prev


def echelon(M, ncols: int | None = None, nonvanishing: Sequence = (), generic: bool = False):
    """Fraction-free reduced echelon form.

    Returns ``(rows, pivot_columns, d)``: each returned row ``t`` has value
    ``d`` at ``pivot_columns[t]`` and zero at the other pivot columns.
    """
    M = list(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if _is_constant_matrix(M):
        rows, pivots = ff_gauss_jordan_int(_to_int_rows(M), ncols)
        d = rows[0][pivots[0]] if rows else 1
        return [[Poly.const(x) for x in r] for r in rows], pivots, Poly.const(d)
    nonvanishing = [as_poly(f) for f in nonvanishing]
    return _poly_gauss_jordan(M, ncols, nonvanishing, generic)


def _clean_vector(v: list[Poly]) -> list[Poly]:
    g = gcd_all(v)
    if not g.is_zero and g != ONE:
        v = [x.divexact(g) for x in v]
    den = 1
    num = 0
    for x in v:
        for c in x._t.values():
            c = Fraction(c)
            den = lcm(den, c.denominator)
            num = gcd(num, c.numerator)
    first = next((x for x in v if not x.is_zero), None)
    if first is None:
        return v
    scale = Fraction(den, num) if num else Fraction(1)
    if first.leading_term()[1] < 0:
        scale = -scale
    return [x * scale for x in v]


def nullspace_int(M, ncols: int) -> list[list[int]]:
    """Right nullspace of a rational matrix as primitive integer vectors."""
    rows, pivots = ff_gauss_jordan_int(_to_int_rows(M), ncols)
    d = rows[0][pivots[0]] if rows else 1
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = d
        for row, c in zip(rows, pivots):
            v[c] = -row[f]
        basis.append(_primitive_int(v))
    return basis


def nullspace(M, ncols: int | None = None, nonvanishing: Sequence = (), generic: bool = False) -> list[list[Poly]]:
    """Basis of the right nullspace over the fraction field of the parameters.

    Basis vectors are polynomial, with denominators and content cleared and
    the first nonzero entry having positive leading coefficient.  With
    ``generic=False`` a :class:`DegeneratePivotError` is raised when the
    elimination would have to divide by a parameter polynomial that is
    neither constant nor a product of ``nonvanishing`` factors; with
    ``generic=True`` such pivots are accepted (Zariski-generic answer).
    """
    M = list(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if _is_constant_matrix(M):
        return [[Poly.const(x) for x in v] for v in nullspace_int(M, ncols)]
    rows, pivots, d = echelon(M, ncols, nonvanishing, generic)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = d
        for row, c in zip(rows, pivots):
            v[c] = -row[f]
        basis.append(_clean_vector(v))
    return basis


def rank(M, ncols: int | None = None, nonvanishing: Sequence = (), generic: bool = True) -> int:
    M = list(M)
    if not M:
        return 0
    return len(echelon(M, ncols, nonvanishing, generic)[1])


def row_basis(M, ncols: int | None = None, nonvanishing: Sequence = (), generic: bool = True) -> list[list[Poly]]:
    """A basis of the row space (primitive, reduced rows)."""
    M = list(M)
    if not M:
        return []
    rows, _, _ = echelon(M, ncols, nonvanishing, generic)
    return [_clean_vector(list(r)) for r in rows]


def mat_vec(M, v) -> list[Poly]:
    return [sum((as_poly(a) * as_poly(b) for a, b in zip(row, v)), ZERO) for row in M]


def coefficient_rows(polys, keep) -> tuple[list[list[Poly]], list[tuple]]:
    """Coefficient matrix of ``polys`` with respect to the monomials in the
    variables selected by ``keep``; other variables stay in the entries."""
    parts = [p.split(keep) for p in polys]
    monos = sorted({m for d in parts for m in d})
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for d in parts:
        row = [ZERO] * len(monos)
        for m, c in d.items():
            row[index[m]] = c
        rows.append(row)
    return rows, monos


def span_basis(polys, keep=lambda v: v.is_coordinate, nonvanishing: Sequence = ()) -> list[Poly]:
    """A basis (over the fraction field of the remaining variables) of the
    span of ``polys`` viewed as polynomials in the ``keep`` variables."""
    polys = [as_poly(p) for p in polys if not as_poly(p).is_zero]
    if not polys:
        return []
    rows, monos = coefficient_rows(polys, keep)
    basis = row_basis(rows, len(monos), nonvanishing, generic=True)
    out = []
    for row in basis:
        p = ZERO
        for m, c in zip(monos, row):
            if not c.is_zero:
                p = p + c * Poly({m: 1})
        out.append(p)
    return out


def span_dim(polys, keep=lambda v: v.is_coordinate, nonvanishing: Sequence = ()) -> int:
    polys = [as_poly(p) for p in polys if not as_poly(p).is_zero]
    if not polys:
        return 0
    rows, monos = coefficient_rows(polys, keep)
    return rank(rows, len(monos), nonvanishing, generic=True)
