# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for sparse polynomial arithmetic and fraction-free
elimination.  Mirrors ``_kernels_py`` exactly; see that module for the data
layout.
"""

from fractions import Fraction


cdef inline object _norm(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), i = 0, j = 0
    cdef long va, vb
    if na == 0:
        return b
    if nb == 0:
        return a
    cdef list out = []
    while i < na and j < nb:
        va = a[i]
        vb = b[j]
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
            out.append(<long>a[i + 1] + <long>b[j + 1])
            i += 2
            j += 2
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef dict poly_mul(dict ta, dict tb):
    cdef dict out = {}
    cdef tuple ma, mb, m
    cdef object ca, cb, c
    if len(ta) > len(tb):
        ta, tb = tb, ta
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            m = mono_mul(ma, mb)
            c = out.get(m)
            if c is None:
                out[m] = ca * cb
            else:
                out[m] = c + ca * cb
    return {m: _norm(c) for m, c in out.items() if c}


cpdef dict poly_add(dict ta, dict tb, int sign=1):
    cdef dict out = dict(ta)
    cdef tuple m
    cdef object c, old, new
    for m, c in tb.items():
        old = out.get(m)
        if old is None:
            out[m] = c if sign == 1 else -c
        else:
            new = old + c if sign == 1 else old - c
            if new:
                out[m] = _norm(new)
            else:
                del out[m]
    return out


def ff_gauss_jordan_int(rows, Py_ssize_t ncols):
    cdef list rs = [r for r in rows if any(r)]
    cdef object prev = 1, p, f, v, av, bestabs, q, r
    cdef Py_ssize_t k = 0, c, i, j, best
    cdef list pivots = [], kept, new, row, prow
    for c in range(ncols):
        best = -1
        bestabs = 0
        for i in range(k, len(rs)):
            v = (<list>rs[i])[c]
            if v:
                av = v if v > 0 else -v
                if best < 0 or av < bestabs:
                    best = i
                    bestabs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        rs[k], rs[best] = rs[best], rs[k]
        prow = rs[k]
        p = prow[c]
        kept = []
        for i in range(len(rs)):
            row = rs[i]
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
        rs = kept
        pivots.append(c)
        prev = p
        k += 1
        if k == len(rs):
            break
    return rs[:k], pivots
