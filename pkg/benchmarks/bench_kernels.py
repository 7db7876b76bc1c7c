"""Compare the compiled kernels with the pure-Python reference.

Runs each kernel on the same inputs with both backends, checks that the
results agree and prints the timings.  An end-to-end run (the full
verification suite under each backend, in a subprocess) is added with
``--suite``.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from leibniz3 import _kernels_py

try:
    from leibniz3 import _kernels as _compiled
except ImportError:
    _compiled = None


def random_poly(rng: random.Random, nvars: int, terms: int, maxdeg: int) -> dict:
    out = {}
    for _ in range(terms):
        mono = []
        for v in sorted(rng.sample(range(nvars), rng.randint(0, min(nvars, maxdeg)))):
            mono += [v, rng.randint(1, 2)]
        out[tuple(mono)] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4))
    return out


def random_matrix(rng: random.Random, rows: int, cols: int, rank: int) -> list:
    basis = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rank)]
    return [[sum(rng.randint(-3, 3) * b[j] for b in basis) for j in range(cols)] for _ in range(rows)]


def timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(seed: int):
    rng = random.Random(seed)
    polys = [(random_poly(rng, 12, 40, 4), random_poly(rng, 12, 40, 4)) for _ in range(20)]
    mats = [random_matrix(rng, 60, 80, 45) for _ in range(3)]

    def mul(mod):
        return lambda: [mod.poly_mul(a, b) for a, b in polys]

    def add(mod):
        return lambda: [mod.poly_add(a, b, -1) for a, b in polys * 20]

    def gauss(mod):
        return lambda: [mod.ff_gauss_jordan_int([list(r) for r in M], 80) for M in mats]

    return [("poly_mul", mul), ("poly_add", add), ("ff_gauss_jordan_int", gauss)]


def suite_time(pure: bool) -> float:
    env = dict(os.environ, LEIBNIZ_PURE_PYTHON="1" if pure else "0")
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-m", "leibniz3.cli", "verify"], env=env, check=True, capture_output=True)
    return time.perf_counter() - t0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--suite", action="store_true", help="also time the verification suite per backend")
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled kernels are not built; only the pure-Python timings are shown")
    print(f"{'kernel':<22}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, make in cases(args.seed):
        tp = timeit(make(_kernels_py), args.repeat)
        if _compiled is None:
            print(f"{name:<22}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        if make(_kernels_py)() != make(_compiled)():
            print(f"{name}: backends disagree")
            return 1
        tc = timeit(make(_compiled), args.repeat)
        print(f"{name:<22}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.2f}x")
    if args.suite:
        tp, tc = suite_time(True), suite_time(False)
        print(f"{'verify suite':<22}{tp:>12.2f}{tc:>12.2f}{tp / tc:>9.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
