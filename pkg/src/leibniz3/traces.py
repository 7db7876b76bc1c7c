"""Operator traces of words in the generic elements.

A word is a composite of multiplication operators applied to ``chi_0``,
stored outermost first as a tuple of ``(side, arg)`` factors.  ``side`` is
``"L"`` (multiply by the argument on the left) or ``"R"`` (on the right);
``arg`` is a copy index ``r`` (the generic element ``chi_r``) or a nested
pair ``(a, b)`` meaning the product of the two arguments.

Text syntax: factors joined by ``.``, each a side letter followed by an
argument, where an argument is a copy index or ``(arg*arg)``::

    R1.R2      tr((chi_0 chi_2) chi_1)
    L1.L2      tr(chi_1 (chi_2 chi_0))
    L(1*2)     tr((chi_1 chi_2) chi_0)
    R((1*2)*1) tr(chi_0 ((chi_1 chi_2) chi_1))

The empty word is written ``1`` (or the empty string) and has trace ``n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Union

from .algebra import StructureTable, double_mult_matrices, generic_element, mul, mult_matrices
from .exactpoly import ONE, ZERO, Poly, Var
from .linalg import span_basis

Arg = Union[int, tuple]
SIDES = ("L", "R")


def arg_degree(arg: Arg) -> int:
    return 1 if isinstance(arg, int) else arg_degree(arg[0]) + arg_degree(arg[1])


def arg_leaves(arg: Arg) -> list[int]:
    return [arg] if isinstance(arg, int) else arg_leaves(arg[0]) + arg_leaves(arg[1])


def arg_depth(arg: Arg) -> int:
    return 0 if isinstance(arg, int) else 1 + max(arg_depth(arg[0]), arg_depth(arg[1]))


def format_arg(arg: Arg) -> str:
    if isinstance(arg, int):
        return str(arg)
    return f"({format_arg(arg[0])}*{format_arg(arg[1])})"


@dataclass(frozen=True)
class TraceWord:
    factors: tuple = ()

    def __post_init__(self):
        fs = tuple((side, _norm_arg(arg)) for side, arg in self.factors)
        for side, arg in fs:
            if side not in SIDES:
                raise ValueError(f"side must be L or R, got {side!r}")
            if min(arg_leaves(arg)) < 1:
                raise ValueError("copy indices must be >= 1")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def parse(cls, text: str) -> "TraceWord":
        text = text.replace(" ", "")
        if text in ("", "1"):
            return cls(())
        return cls(tuple(_parse_factor(f) for f in _split_factors(text)))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return ".".join(side + format_arg(arg) for side, arg in self.factors)

    def multidegree(self, m: int | None = None) -> tuple[int, ...]:
        leaves = [r for _, a in self.factors for r in arg_leaves(a)]
        m = max(leaves, default=0) if m is None else m
        if any(r > m for r in leaves):
            raise ValueError(f"word {self} uses a copy index above m={m}")
        d = [0] * m
        for r in leaves:
            d[r - 1] += 1
        return tuple(d)

    @property
    def degree(self) -> int:
        return sum(arg_degree(a) for _, a in self.factors)

    @property
    def max_copy(self) -> int:
        return max((r for _, a in self.factors for r in arg_leaves(a)), default=0)

    def expression(self) -> str:
        """The word as a product expression in chi_0, chi_1, ..."""
        def show(a):
            return f"chi_{a}" if isinstance(a, int) else f"({show(a[0])} {show(a[1])})"

        e = "chi_0"
        for side, arg in reversed(self.factors):
            e = f"({show(arg)} {e})" if side == "L" else f"({e} {show(arg)})"
        return e


def _norm_arg(arg) -> Arg:
    if isinstance(arg, int):
        return arg
    a, b = arg
    return (_norm_arg(a), _norm_arg(b))


def _split_factors(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "." and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            raise ValueError(f"unbalanced parentheses in {text!r}")
        cur += ch
    out.append(cur)
    return out


def _parse_factor(f: str) -> tuple[str, Arg]:
    if len(f) < 2 or f[0] not in SIDES:
        raise ValueError(f"bad factor {f!r}: expected L or R followed by an argument")
    arg, rest = _parse_arg(f, 1)
    if rest != len(f):
        raise ValueError(f"trailing characters in factor {f!r}")
    return f[0], arg


def _parse_arg(s: str, pos: int) -> tuple[Arg, int]:
    if pos < len(s) and s[pos] == "(":
        a, pos = _parse_arg(s, pos + 1)
        if pos >= len(s) or s[pos] != "*":
            raise ValueError(f"expected '*' at position {pos} in {s!r}")
        b, pos = _parse_arg(s, pos + 1)
        if pos >= len(s) or s[pos] != ")":
            raise ValueError(f"expected ')' at position {pos} in {s!r}")
        return (a, b), pos + 1
    end = pos
    while end < len(s) and s[end].isdigit():
        end += 1
    if end == pos:
        raise ValueError(f"expected a copy index at position {pos} in {s!r}")
    return int(s[pos:end]), end


@dataclass(frozen=True)
class TraceValue:
    value: Poly
    word: TraceWord
    m: int

    @property
    def multidegree(self) -> tuple[int, ...]:
        return self.word.multidegree(self.m)


def _resolve_m(w: TraceWord, m: int | None) -> int:
    return max(w.max_copy, 1) if m is None else m


# ---------------------------------------------------------------------------
# direct engine


def _arg_element(T: StructureTable, arg: Arg, cache: dict):
    el = cache.get(arg)
    if el is None:
        if isinstance(arg, int):
            el = generic_element(arg, T.dim)
        else:
            el = mul(T, _arg_element(T, arg[0], cache), _arg_element(T, arg[1], cache))
        cache[arg] = el
    return el


def operator_matrix(T: StructureTable, w: TraceWord) -> list[list[Poly]]:
    """Matrix (columns = images of ``e_i``) of ``b -> h(b, X_1, ..., X_m)``."""
    n = T.dim
    cache: dict = {}
    args = [(side, _arg_element(T, arg, cache)) for side, arg in w.factors]
    cols = []
    for i in range(1, n + 1):
        v = T.basis(i)
        for side, a in reversed(args):
            v = mul(T, a, v) if side == "L" else mul(T, v, a)
        cols.append(v)
    return [[cols[j][l] for j in range(n)] for l in range(n)]


def trace_direct(T: StructureTable, w: TraceWord, m: int | None = None) -> TraceValue:
    """Trace of the operator built by applying the word to each basis vector.

    Arguments may be nested to any depth here.
    """
    M = operator_matrix(T, w)
    return TraceValue(sum((M[i][i] for i in range(T.dim)), ZERO), w, _resolve_m(w, m))


# ---------------------------------------------------------------------------
# closed-form engine


def _matmul(A, B):
    n = len(A)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            a = Ai[k]
            if a.is_zero:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(n):
                if not Bk[j].is_zero:
                    row[j] = row[j] + a * Bk[j]
    return out


def _is_zero_matrix(A) -> bool:
    return all(x.is_zero for row in A for x in row)


def trace_closed_form(T: StructureTable, w: TraceWord, m: int | None = None) -> TraceValue:
    """Sum over index tuples of ``tr(M^(i_1) ... M^(i_k))`` times the matching
    coordinate monomial.  Arguments must be single copies or pairs of copies.
    """
    n = T.dim
    mm = _resolve_m(w, m)
    if not w.factors:
        return TraceValue(Poly.const(n), w, mm)
    single = {}
    double = {}
    per_factor = []  # list of [(matrix, monomial Poly)]
    for side, arg in w.factors:
        k = 0 if side == "L" else 1
        choices = []
        if isinstance(arg, int):
            for i in range(1, n + 1):
                if i not in single:
                    single[i] = mult_matrices(T, i)
                M = single[i][k]
                if not _is_zero_matrix(M):
                    choices.append((M, Poly.var(Var.coord(arg, i))))
        elif isinstance(arg[0], int) and isinstance(arg[1], int):
            r, r2 = arg
            for i in range(1, n + 1):
                for i2 in range(1, n + 1):
                    if (i, i2) not in double:
                        double[i, i2] = double_mult_matrices(T, i, i2)
                    M = double[i, i2][k]
                    if not _is_zero_matrix(M):
                        choices.append((M, Poly.var(Var.coord(r, i)) * Poly.var(Var.coord(r2, i2))))
        else:
            raise ValueError(f"closed form handles arguments of degree <= 2 only, got {format_arg(arg)}")
        if not choices:
            return TraceValue(ZERO, w, mm)
        per_factor.append(choices)
    total = ZERO
    for combo in itertools.product(*per_factor):
        P = combo[0][0]
        for M, _ in combo[1:]:
            P = _matmul(P, M)
        t = sum((P[i][i] for i in range(n)), ZERO)
        if t.is_zero:
            continue
        mono = ONE
        for _, x in combo:
            mono = mono * x
        total = total + t * mono
    return TraceValue(total, w, mm)


def trace_linear_n3(T: StructureTable, side: str, r: int) -> TraceValue:
    """``tr(chi_r chi_0)`` (side L) or ``tr(chi_0 chi_r)`` (side R) for n = 3,
    read off the diagonal pattern of the table: the coefficient of ``x_{r,i}``
    is ``sum_j M_{ijj}`` for L and ``sum_j M_{jij}`` for R."""
    if T.dim != 3:
        raise ValueError("trace_linear_n3 requires a 3-dimensional table")
    if side not in SIDES:
        raise ValueError(f"side must be L or R, got {side!r}")
    E = T.entries
    val = ZERO
    for i in range(3):
        if side == "L":
            c = E[i][0][0] + E[i][1][1] + E[i][2][2]
        else:
            c = E[0][i][0] + E[1][i][1] + E[2][i][2]
        val = val + c * Poly.var(Var.coord(r, i + 1))
    return TraceValue(val, TraceWord(((side, r),)), r)


# ---------------------------------------------------------------------------
# enumeration and the trace subalgebra


def _trees(leaves: int, m: int, nested: bool) -> list[Arg]:
    """All arguments with the given number of leaves over copies ``1..m``."""
    if leaves == 1:
        return list(range(1, m + 1))
    if leaves == 2 and not nested:
        return [(a, b) for a in range(1, m + 1) for b in range(1, m + 1)]
    if not nested:
        return []
    out = []
    for k in range(1, leaves):
        for a in _trees(k, m, True):
            for b in _trees(leaves - k, m, True):
                out.append((a, b))
    return out


def _compositions(total: int):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def enumerate_trace_words(max_total_degree: int, m: int, nested: bool = False,
                          multidegree: tuple | None = None) -> list[TraceWord]:
    """All non-empty words of total degree ``<= max_total_degree`` over copies
    ``1..m`` and sides L/R.  By default arguments have degree 1 or 2; with
    ``nested=True`` every bracketing of every argument is included."""
    if max_total_degree < 1:
        raise ValueError("max_total_degree must be >= 1")
    if m < 1:
        raise ValueError("m must be >= 1")
    seen = set()
    out = []
    for total in range(1, max_total_degree + 1):
        if multidegree is not None and total != sum(multidegree):
            continue
        for comp in _compositions(total):
            pools = [[(s, a) for s in SIDES for a in _trees(k, m, nested)] for k in comp]
            for fs in itertools.product(*pools):
                w = TraceWord(fs)
                if multidegree is not None and w.multidegree(m) != tuple(multidegree):
                    continue
                if w not in seen:
                    seen.add(w)
                    out.append(w)
    return out


def multidegrees_up_to(m: int, bound: int) -> list[tuple[int, ...]]:
    """All multidegrees in N^m of total degree <= bound, by total then lex."""
    out = []
    for total in range(bound + 1):
        for d in itertools.product(range(total + 1), repeat=m):
            if sum(d) == total:
                out.append(d)
    return sorted(out, key=lambda d: (sum(d), tuple(-x for x in d)))


def trace_values(T: StructureTable, words: Iterable[TraceWord], m: int) -> list[TraceValue]:
    return [trace_direct(T, w, m) for w in words]


def trace_subalgebra_span(T: StructureTable, max_total_degree: int, m: int,
                          degrees: Iterable[tuple] | None = None) -> dict[tuple, list[Poly]]:
    """Basis of each graded piece of the algebra generated by 1 and all traces.

    Uses every word (any nesting of the arguments) up to the degree bound.
    """
    gens: dict[tuple, list[Poly]] = {}
    if max_total_degree >= 1:
        for w in enumerate_trace_words(max_total_degree, m, nested=True):
            v = trace_direct(T, w, m).value
            if not v.is_zero:
                gens.setdefault(w.multidegree(m), []).append(v)
    gens = {d: span_basis(vs, nonvanishing=T.constraints) for d, vs in gens.items()}
    wanted = set(degrees) if degrees is not None else None
    span: dict[tuple, list[Poly]] = {}
    for d in multidegrees_up_to(m, max_total_degree):
        if sum(d) == 0:
            span[d] = [ONE]
            continue
        cands = []
        for e, gs in gens.items():
            rest = tuple(a - b for a, b in zip(d, e))
            if min(rest) < 0:
                continue
            for g in gs:
                for s in span.get(rest, []):
                    cands.append(g * s)
        span[d] = span_basis(cands, nonvanishing=T.constraints)
    if wanted is not None:
        return {d: span[d] for d in span if d in wanted}
    return span
