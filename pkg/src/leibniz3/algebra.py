"""Finite-dimensional algebras given by structure constants.

A :class:`StructureTable` stores ``e_i e_j = sum_l M[i][j][l] e_l`` with
polynomial entries in parameters (never in coordinates).  Indices in the
public functions are 1-based, matching the usual ``e_1, ..., e_n`` naming.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactpoly import ONE, ZERO, Poly, Var, as_poly, parse_poly, substitute
from .linalg import nullspace, rank, row_basis

Element = tuple  # tuple of n Poly coordinates


@dataclass(frozen=True)
class StructureTable:
    dim: int
    entries: tuple  # entries[i][j][l], 0-based
    constraints: tuple = ()
    name: str = ""

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise ValueError("dimension must be positive")
        ent = tuple(
            tuple(tuple(as_poly(c) for c in self.entries[i][j]) for j in range(n)) for i in range(n)
        )
        if len(self.entries) != n or any(len(r) != n or any(len(v) != n for v in r) for r in ent):
            raise ValueError(f"table must be {n}x{n} with length-{n} vectors")
        for row in ent:
            for vec in row:
                for c in vec:
                    if any(v.is_coordinate for v in c.variables()):
                        raise ValueError("structure constants may not contain coordinates")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "constraints", tuple(as_poly(c) for c in self.constraints))

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int, name: str = "") -> "StructureTable":
        return cls(n, tuple(tuple((ZERO,) * n for _ in range(n)) for _ in range(n)), (), name)

    @classmethod
    def from_products(cls, n: int, products: Mapping, constraints=(), name: str = "") -> "StructureTable":
        """Build from ``{(i, j): vector}`` or ``{"e2e3": "lambda*e1 + e2"}`` (1-based)."""
        ent = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for key, val in products.items():
            if isinstance(key, str):
                i, j = _parse_product_key(key)
            else:
                i, j = key
            vec = parse_basis_combination(val, n) if isinstance(val, str) else [as_poly(c) for c in val]
            ent[i - 1][j - 1] = list(vec)
        return cls(n, ent, tuple(constraints), name)

    @classmethod
    def from_json(cls, data: Mapping) -> "StructureTable":
        n = int(data["dim"])
        table = [[[Poly.from_json(p) for p in vec] for vec in row] for row in data["table"]]
        cons = [Poly.from_json(p) for p in data.get("constraints", [])]
        return cls(n, table, tuple(cons), data.get("name", ""))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "table": [[[c.to_json() for c in vec] for vec in row] for row in self.entries],
            "constraints": [c.to_json() for c in self.constraints],
        }

    # -- accessors ----------------------------------------------------
    def product(self, i: int, j: int) -> Element:
        return self.entries[i - 1][j - 1]

    def const(self, i: int, j: int, l: int) -> Poly:
        return self.entries[i - 1][j - 1][l - 1]

    def basis(self, i: int) -> Element:
        return tuple(ONE if k == i - 1 else ZERO for k in range(self.dim))

    def parameters(self) -> set[Var]:
        out: set[Var] = set()
        for row in self.entries:
            for vec in row:
                for c in vec:
                    out |= c.variables()
        return out

    @property
    def is_rational(self) -> bool:
        return not self.parameters()

    def specialize(self, values: Mapping) -> "StructureTable":
        sigma = {(Var(k) if isinstance(k, str) else k): as_poly(v) for k, v in values.items()}
        ent = [[[substitute(c, sigma) for c in vec] for vec in row] for row in self.entries]
        cons = []
        for c in self.constraints:
            c2 = substitute(c, sigma)
            if c2.is_zero:
                raise ValueError(f"specialisation violates the nonvanishing condition {c}")
            if not c2.is_constant:
                cons.append(c2)
        return StructureTable(self.dim, ent, tuple(cons), self.name)

    def change_basis(self, P: Sequence[Sequence]) -> "StructureTable":
        """Table with respect to the basis ``f_a = sum_b P[b][a] e_b`` (rational ``P``)."""
        n = self.dim
        P = [[Fraction(as_poly(x).constant_value) for x in row] for row in P]
        Pinv = inverse_rational(P)
        cols = [tuple(Poly.const(P[b][a]) for b in range(n)) for a in range(n)]
        ent = []
        for a in range(n):
            row = []
            for c in range(n):
                prod = mul(self, cols[a], cols[c])
                row.append([sum((Pinv[k][l] * prod[l] for l in range(n)), ZERO) for k in range(n)])
            ent.append(row)
        return StructureTable(n, ent, self.constraints, self.name)


def _parse_product_key(key: str) -> tuple[int, int]:
    parts = key.replace("e", " ").split()
    if len(parts) != 2:
        raise ValueError(f"bad product key {key!r}; expected like 'e2e3'")
    return int(parts[0]), int(parts[1])


def parse_basis_combination(text: str, n: int) -> list[Poly]:
    """Parse ``"lambda*e1 + e2"`` into coordinates with respect to ``e_1..e_n``."""
    basis_vars = {f"e{k}": Var(f"basis_e{k}") for k in range(1, n + 1)}

    def resolve(name: str) -> Poly:
        if name in basis_vars:
            return Poly.var(basis_vars[name])
        return Poly.var(Var(name))

    p = parse_poly(text, resolve)
    bvars = set(basis_vars.values())
    parts = p.split(lambda v: v in bvars)
    vec = [ZERO] * n
    for mono, coeff in parts.items():
        if len(mono) != 2 or mono[1] != 1:
            raise ValueError(f"{text!r} is not linear in the basis vectors")
        k = int(Var.from_id(mono[0]).name[len("basis_e"):])
        vec[k - 1] = coeff
    return vec


def inverse_rational(P: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(P)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(P)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


# ---------------------------------------------------------------------------
# elements


def generic_element(r: int, n: int) -> Element:
    """The generic element ``X_r = sum_i x_{r,i} e_i``."""
    return tuple(Poly.var(Var.coord(r, i)) for i in range(1, n + 1))


def add(a: Element, b: Element) -> Element:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Element) -> Element:
    c = as_poly(c)
    return tuple(c * x for x in a)


def mul(T: StructureTable, a: Element, b: Element) -> Element:
    """Bilinear product ``sum_{i,j} a_i b_j M_ij``."""
    n = T.dim
    if len(a) != n or len(b) != n:
        raise ValueError(f"element length does not match table dimension {n}")
    out = [ZERO] * n
    for i in range(n):
        ai = a[i]
        if ai.is_zero:
            continue
        for j in range(n):
            bj = b[j]
            if bj.is_zero:
                continue
            vec = T.entries[i][j]
            coef = None
            for l in range(n):
                if not vec[l].is_zero:
                    if coef is None:
                        coef = ai * bj
                    out[l] = out[l] + coef * vec[l]
    return tuple(out)


# ---------------------------------------------------------------------------
# operator matrices


def _check_index(T: StructureTable, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= T.dim:
            raise IndexError(f"basis index {i} out of range 1..{T.dim}")


def mult_matrices(T: StructureTable, i: int) -> tuple[list[list[Poly]], list[list[Poly]]]:
    """Matrices of ``L_{e_i}`` and ``R_{e_i}``: entries ``(l, j)`` are
    ``M_{ijl}`` and ``M_{jil}`` (0-based lists)."""
    _check_index(T, i)
    n, E = T.dim, T.entries
    ML = [[E[i - 1][j][l] for j in range(n)] for l in range(n)]
    MR = [[E[j][i - 1][l] for j in range(n)] for l in range(n)]
    return ML, MR


def double_mult_matrices(T: StructureTable, i: int, i2: int) -> tuple[list[list[Poly]], list[list[Poly]]]:
    """Matrices of ``L_{e_i e_i2}`` and ``R_{e_i e_i2}``."""
    _check_index(T, i, i2)
    n, E = T.dim, T.entries
    c = E[i - 1][i2 - 1]
    ML = [[sum((c[t] * E[t][j][l] for t in range(n)), ZERO) for j in range(n)] for l in range(n)]
    MR = [[sum((c[t] * E[j][t][l] for t in range(n)), ZERO) for j in range(n)] for l in range(n)]
    return ML, MR


# ---------------------------------------------------------------------------
# identities and subspaces


@dataclass
class LeibnizCheck:
    ok: bool
    witness: tuple | None = None  # (i, j, k), 1-based
    residual: Element | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_leibniz(T: StructureTable) -> LeibnizCheck:
    """Right Leibniz identity ``(xy)z = (xz)y + x(yz)`` on basis triples."""
    n = T.dim
    e = [T.basis(i) for i in range(1, n + 1)]
    for i in range(n):
        for j in range(n):
            eij = T.entries[i][j]
            for k in range(n):
                lhs = mul(T, eij, e[k])
                rhs = add(mul(T, T.entries[i][k], e[j]), mul(T, e[i], T.entries[j][k]))
                res = tuple(a - b for a, b in zip(lhs, rhs))
                if any(not x.is_zero for x in res):
                    return LeibnizCheck(False, (i + 1, j + 1, k + 1), res)
    return LeibnizCheck(True)


@dataclass
class Subspace:
    basis: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _span(T: StructureTable, vectors) -> Subspace:
    vecs = [list(v) for v in vectors if any(not x.is_zero for x in v)]
    if not vecs:
        return Subspace([])
    return Subspace([tuple(v) for v in row_basis(vecs, T.dim, T.constraints, generic=True)])


def leib_ideal(T: StructureTable) -> Subspace:
    """Span of all squares ``a^2``: the ``M_ii`` and the ``M_ij + M_ji``."""
    n = T.dim
    gens = [T.entries[i][i] for i in range(n)]
    gens += [add(T.entries[i][j], T.entries[j][i]) for i in range(n) for j in range(i + 1, n)]
    return _span(T, gens)


def commutator_span(T: StructureTable) -> Subspace:
    """Span of ``e_i e_j - e_j e_i``; zero iff the algebra is commutative."""
    n = T.dim
    gens = [tuple(a - b for a, b in zip(T.entries[i][j], T.entries[j][i])) for i in range(n) for j in range(i + 1, n)]
    return _span(T, gens)


def right_annihilator(T: StructureTable) -> Subspace:
    """``{a : b a = 0 for all b}`` via ``sum_j a_j M_{ijl} = 0``."""
    n = T.dim
    rows = [[T.entries[i][j][l] for j in range(n)] for i in range(n) for l in range(n)]
    return Subspace([tuple(v) for v in nullspace(rows, n, T.constraints, generic=True)])


def product_space(T: StructureTable, U: Subspace, V: Subspace) -> list[Element]:
    return [mul(T, u, v) for u in U.basis for v in V.basis]


@dataclass
class NilpotencyResult:
    ncl: int | None  # None means not nilpotent (within the cap)
    chain_dims: list[int]
    cap: int

    @property
    def value(self) -> float:
        return math.inf if self.ncl is None else self.ncl

    @property
    def stabilized(self) -> bool:
        """True when the product chain visibly stopped shrinking before the cap."""
        d = self.chain_dims
        return self.ncl is not None or (len(d) >= 2 and d[-1] == d[-2])

    @property
    def warning(self) -> str | None:
        if self.ncl is None and not self.stabilized:
            return f"chain still shrinking at cap {self.cap}: dims {self.chain_dims}"
        return None


def nilpotency(T: StructureTable, cap: int | None = None) -> NilpotencyResult:
    """Nilpotency via the chain ``V_1 = A``, ``V_k = sum_{a+b=k} V_a V_b``.

    ``V_k`` contains every product of ``k`` elements in any bracketing, so
    the class is the least ``k`` with ``V_k = 0``.
    """
    n = T.dim
    cap = n + 2 if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be >= 1")
    V = {1: Subspace([T.basis(i) for i in range(1, n + 1)])}
    dims = [n]
    for k in range(2, cap + 1):
        prods = []
        for a in range(1, k):
            prods += product_space(T, V[a], V[k - a])
        V[k] = _span(T, prods)
        dims.append(V[k].dim)
        if V[k].dim == 0:
            return NilpotencyResult(k, dims, cap)
    return NilpotencyResult(None, dims, cap)


def nilpotency_class(T: StructureTable, cap: int | None = None) -> float:
    """Nilpotency class, or ``math.inf`` when the algebra is not nilpotent."""
    return nilpotency(T, cap).value


def derivation_system(T: StructureTable) -> list[list[Poly]]:
    """Linear system for ``D(e_i e_j) = D(e_i) e_j + e_i D(e_j)``.

    Unknown ``D[a][b]`` (coefficient of ``e_a`` in ``D(e_b)``) sits in
    column ``a*n + b``.
    """
    n, E = T.dim, T.entries
    rows = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    c = E[i][j][k]
                    if not c.is_zero:
                        row[l * n + k] = row[l * n + k] + c
                    c = E[k][j][l]
                    if not c.is_zero:
                        row[k * n + i] = row[k * n + i] - c
                    c = E[i][k][l]
                    if not c.is_zero:
                        row[k * n + j] = row[k * n + j] - c
                if any(not x.is_zero for x in row):
                    rows.append(row)
    return rows


def derivation_dim(T: StructureTable) -> int:
    """Dimension of the derivation algebra (generic in any parameters)."""
    n = T.dim
    rows = derivation_system(T)
    return n * n - rank(rows, n * n, T.constraints, generic=True) if rows else n * n
