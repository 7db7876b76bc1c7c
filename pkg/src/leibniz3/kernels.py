"""Backend selection for the arithmetic kernels.

The compiled extension is used when it was built; otherwise (or when
``LEIBNIZ_PURE_PYTHON=1`` is set) the pure-Python reference is used.
"""

import os

from . import _kernels_py

if os.environ.get("LEIBNIZ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

mono_mul = _impl.mono_mul
poly_mul = _impl.poly_mul
poly_add = _impl.poly_add
ff_gauss_jordan_int = _impl.ff_gauss_jordan_int

__all__ = ["BACKEND", "mono_mul", "poly_mul", "poly_add", "ff_gauss_jordan_int"]
