"""Pure-Python reference kernels.

Same API as the compiled ``_kernels`` extension.  Monomials are flat tuples
``(var_id, exp, var_id, exp, ...)`` sorted by ``var_id``; polynomials are
dicts ``monomial -> coefficient`` where coefficients are ``int`` or
``Fraction`` and never zero.
"""

from fractions import Fraction


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va, vb = a[i], b[j]
        if va < vb:
            out.append(va)
            out.append(a[i + 1])
            i += 2
        elif vb < va:
            out.append(vb)
            out.append(b[j + 1])
            j += 2
        else:
            out.append(va)
            out.append(a[i + 1] + b[j + 1])
            i += 2
            j += 2
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return tuple(out)


def poly_mul(ta, tb):
    if len(ta) > len(tb):
        ta, tb = tb, ta
    out = {}
    get = out.get
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            m = mono_mul(ma, mb)
            c = get(m)
            out[m] = ca * cb if c is None else c + ca * cb
    return {m: _norm(c) for m, c in out.items() if c}


def poly_add(ta, tb, sign=1):
    out = dict(ta)
    get = out.get
    for m, c in tb.items():
        old = get(m)
        if old is None:
            out[m] = c if sign == 1 else -c
        else:
            new = old + c if sign == 1 else old - c
            if new:
                out[m] = _norm(new)
            else:
                del out[m]
    return out


def ff_gauss_jordan_int(rows, ncols):
    """Fraction-free Gauss-Jordan elimination over the integers.

    ``rows`` is a list of integer lists (consumed).  Columns are scanned left
    to right; within a column the pivot is the entry of least absolute value.
    Returns ``(reduced_rows, pivot_columns)`` where every reduced row carries
    the same pivot value at its pivot column and zeros at the other pivot
    columns.  Zero rows are dropped.
    """
    rows = [r for r in rows if any(r)]
    prev = 1
    k = 0
    pivots = []
    for c in range(ncols):
        best = -1
        bestabs = 0
        for i in range(k, len(rows)):
            v = rows[i][c]
            if v:
                av = v if v > 0 else -v
                if best < 0 or av < bestabs:
                    best, bestabs = i, av
                    if av == 1:
                        break
        if best < 0:
            continue
        rows[k], rows[best] = rows[best], rows[k]
        prow = rows[k]
        p = prow[c]
        kept = []
        for i, row in enumerate(rows):
            if i == k:
                kept.append(row)
                continue
            f = row[c]
            if f:
                new = []
                for j in range(ncols):
                    q, r = divmod(p * row[j] - f * prow[j], prev)
                    if r:
                        raise ArithmeticError("inexact fraction-free division")
                    new.append(q)
            elif prev == p:
                new = row
            else:
                new = [(p * x) // prev for x in row]
            if i < k or any(new):
                kept.append(new)
        rows = kept
        pivots.append(c)
        prev = p
        k += 1
        if k == len(rows):
            # remaining columns cannot hold further pivots
            break
    return rows[:k], pivots
