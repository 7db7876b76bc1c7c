from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz3 import _kernels_py, kernels

try:
    from leibniz3 import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

coeffs = st.one_of(st.integers(-9, 9).filter(bool), st.builds(Fraction, st.integers(-9, 9).filter(bool),
                                                             st.integers(2, 5)))


@st.composite
def monos(draw):
    vids = sorted(draw(st.sets(st.integers(0, 6), max_size=3)))
    out = []
    for v in vids:
        out += [v, draw(st.integers(1, 3))]
    return tuple(out)


term_dicts = st.dictionaries(monos(), coeffs, max_size=6)
int_rows = st.lists(st.lists(st.integers(-5, 5), min_size=5, max_size=5), min_size=1, max_size=6)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    if compiled is not None and kernels.BACKEND == "cython":
        assert kernels.poly_mul is compiled.poly_mul


@given(term_dicts, term_dicts)
def test_python_poly_mul_matches_naive(a, b):
    naive: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            exps: dict = {}
            for m in (ma, mb):
                for k in range(0, len(m), 2):
                    exps[m[k]] = exps.get(m[k], 0) + m[k + 1]
            key = tuple(x for v in sorted(exps) for x in (v, exps[v]))
            naive[key] = naive.get(key, 0) + ca * cb
    assert _kernels_py.poly_mul(a, b) == {m: c for m, c in naive.items() if c}


@needs_compiled
@given(term_dicts, term_dicts)
def test_backends_agree_on_polys(a, b):
    assert compiled.poly_mul(a, b) == _kernels_py.poly_mul(a, b)
    for sign in (1, -1):
        assert compiled.poly_add(a, b, sign) == _kernels_py.poly_add(a, b, sign)


@needs_compiled
@given(monos(), monos())
def test_backends_agree_on_monomials(a, b):
    assert compiled.mono_mul(a, b) == _kernels_py.mono_mul(a, b)


@needs_compiled
@given(int_rows)
def test_backends_agree_on_elimination(rows):
    a = _kernels_py.ff_gauss_jordan_int([list(r) for r in rows], 5)
    b = compiled.ff_gauss_jordan_int([list(r) for r in rows], 5)
    assert [list(r) for r in a[0]] == [list(r) for r in b[0]]
    assert list(a[1]) == list(b[1])


def test_environment_forces_pure_python():
    import os
    import subprocess
    import sys
    env = dict(os.environ, LEIBNIZ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from leibniz3 import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
