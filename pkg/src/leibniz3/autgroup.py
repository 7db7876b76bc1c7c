"""Parameterised automorphism families and their action on coordinates.

Matrices act on column vectors: a branch matrix ``g`` sends ``e_j`` to
``sum_i g[i][j] e_i``.  The induced substitution on coordinates is
``x_{r,i} -> sum_j g[i][j] x_{r,j}``, i.e. ``f -> f o g``.  Invariance of
``f`` under a group is the identity ``f o g = f`` for every branch, as a
polynomial identity in the branch parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import StructureTable, mul
from .exactpoly import (LAMBDA, LAURENT_LAMBDA, MU, ONE, ZERO, Poly, RewriteSystem, Var, as_poly,
                        format_poly, normal_form, parse_poly, substitute)

# sample points used for the construction-time determinant check
_SAMPLES = (
    (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37),
    (3, -2, 7, 5, -3, 4, 9, 2, 6, -5, 8, 10),
    (5, 7, -1, 2, 9, -4, 3, 11, 13, 1, 6, 4),
)


def det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by cofactor expansion (small matrices)."""
    n = len(M)
    if n == 1:
        return as_poly(M[0][0])
    if n == 2:
        return as_poly(M[0][0]) * M[1][1] - as_poly(M[0][1]) * M[1][0]
    total = ZERO
    for j in range(n):
        a = as_poly(M[0][j])
        if a.is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = a * det(minor)
        total = total - term if j % 2 else total + term
    return total


def matmul(A, B, rewrite: RewriteSystem | None = None) -> list[list[Poly]]:
    n, k, p = len(A), len(B), len(B[0])
    return [
        [normal_form(sum((as_poly(A[i][t]) * as_poly(B[t][j]) for t in range(k)), ZERO), rewrite) for j in range(p)]
        for i in range(n)
    ]


@dataclass
class Branch:
    matrix: list
    params: list = field(default_factory=list)
    nonvanishing: list = field(default_factory=list)
    name: str = "g"
    rewrite: RewriteSystem | None = None

    def __post_init__(self):
        self.matrix = [[as_poly(x) for x in row] for row in self.matrix]
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("branch matrix must be square")
        self.nonvanishing = [as_poly(f) for f in self.nonvanishing]
        self.params = [p if isinstance(p, str) else p.name for p in self.params]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for row in self.matrix:
            for x in row:
                out |= x.variables()
        return out

    def determinant(self) -> Poly:
        return normal_form(det(self.matrix), self.rewrite)

    def column(self, j: int) -> tuple:
        """Image of ``e_j`` (1-based)."""
        return tuple(self.matrix[i][j - 1] for i in range(self.dim))

    def apply(self, vec) -> tuple:
        n = self.dim
        return tuple(
            normal_form(sum((self.matrix[i][j] * vec[j] for j in range(n) if not vec[j].is_zero), ZERO), self.rewrite)
            for i in range(n)
        )

    def specialize(self, values: Mapping) -> "Branch":
        sigma = {(Var(k) if isinstance(k, str) else k): as_poly(v) for k, v in values.items()}
        mat = [[normal_form(substitute(x, sigma), self.rewrite) for x in row] for row in self.matrix]
        nv = [substitute(f, sigma) for f in self.nonvanishing]
        params = [p for p in self.params if Var(p) not in sigma]
        return Branch(mat, params, [f for f in nv if not f.is_constant], self.name, self.rewrite)

    def sample_point(self) -> dict[Var, Fraction] | None:
        """A rational point where every side condition and the determinant are nonzero."""
        vs = sorted(self.variables | {v for f in self.nonvanishing for v in f.variables()}, key=lambda v: v.key)
        d = det(self.matrix)
        for sample in _SAMPLES:
            point = {}
            for k, v in enumerate(vs):
                if v is MU:
                    continue
                point[v] = Fraction(sample[k % len(sample)])
            if MU in vs:
                # mu stands for 1/lambda
                point[MU] = 1 / point.setdefault(LAMBDA, Fraction(sample[-1]))
            ok = all(not f.evaluate(point).is_zero for f in self.nonvanishing)
            if ok and not d.evaluate(point).is_zero:
                return point
        return None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "matrix": [[format_poly(normal_form(x, self.rewrite)) for x in row] for row in self.matrix],
            "params": list(self.params),
            "nonvanishing": [format_poly(f) for f in self.nonvanishing],
            "rewrite": self.rewrite.name if self.rewrite is not None else None,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Branch":
        rewrite = data.get("rewrite")
        rw = {None: None, "laurent-lambda": LAURENT_LAMBDA}.get(rewrite, False)
        if rw is False:
            raise ValueError(f"unknown rewrite system {rewrite!r}")
        return cls(
            [[parse_poly(x) for x in row] for row in data["matrix"]],
            list(data.get("params", [])),
            [parse_poly(f) for f in data.get("nonvanishing", [])],
            data.get("name", "g"),
            rw,
        )


def identity_branch(n: int) -> Branch:
    return Branch([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], [], [], "id")


def compose(g: Branch, h: Branch) -> Branch:
    """The branch of products ``g h`` (apply ``h`` first)."""
    rw = g.rewrite or h.rewrite
    return Branch(matmul(g.matrix, h.matrix, rw), g.params + [p for p in h.params if p not in g.params],
                  g.nonvanishing + h.nonvanishing, f"{g.name}*{h.name}", rw)


def rename_parameters(g: Branch, suffix: str) -> Branch:
    """Copy of ``g`` whose free parameters carry ``suffix``."""
    sigma = {Var(p): Poly.var(Var(p + suffix)) for p in g.params}
    mat = [[substitute(x, sigma) for x in row] for row in g.matrix]
    nv = [substitute(f, sigma) for f in g.nonvanishing]
    return Branch(mat, [p + suffix for p in g.params], nv, g.name + suffix, g.rewrite)


class DeterminantError(ValueError):
    pass


@dataclass
class AutFamily:
    branches: list
    name: str = ""

    def __post_init__(self):
        for b in self.branches:
            if b.sample_point() is None:
                raise DeterminantError(f"branch {b.name} of {self.name or 'family'} looks singular")

    @property
    def dim(self) -> int:
        return self.branches[0].dim if self.branches else 0

    @property
    def parameter_count(self) -> int:
        return max((len(b.params) for b in self.branches), default=0)

    def specialize(self, values: Mapping) -> "AutFamily":
        return AutFamily([b.specialize(values) for b in self.branches], self.name)

    def to_json(self) -> dict:
        return {"name": self.name, "branches": [b.to_json() for b in self.branches]}

    @classmethod
    def from_json(cls, data: Mapping) -> "AutFamily":
        return cls([Branch.from_json(b) for b in data["branches"]], data.get("name", ""))


@dataclass
class AutCheck:
    ok: bool
    witness: tuple | None = None  # (branch name, i, j, residual)

    def __bool__(self) -> bool:
        return self.ok


def branch_residual(T: StructureTable, g: Branch, i: int, j: int) -> tuple:
    """``g(e_i e_j) - g(e_i) g(e_j)`` after the branch rewrite."""
    lhs = g.apply(T.product(i, j))
    rhs = mul(T, g.column(i), g.column(j))
    return tuple(normal_form(a - b, g.rewrite) for a, b in zip(lhs, rhs))


def verify_branch(T: StructureTable, g: Branch) -> AutCheck:
    if g.dim != T.dim:
        raise ValueError(f"branch is {g.dim}x{g.dim} but the table has dimension {T.dim}")
    for i in range(1, T.dim + 1):
        for j in range(1, T.dim + 1):
            res = branch_residual(T, g, i, j)
            if any(not x.is_zero for x in res):
                return AutCheck(False, (g.name, i, j, res))
    return AutCheck(True)


def verify_aut_family(T: StructureTable, F: AutFamily | Branch) -> AutCheck:
    """Check ``g(e_i e_j) = g(e_i) g(e_j)`` identically for every branch."""
    branches = [F] if isinstance(F, Branch) else F.branches
    for g in branches:
        res = verify_branch(T, g)
        if not res:
            return res
    return AutCheck(True)


def action_substitution(g: Branch, m: int) -> dict[Var, Poly]:
    """``x_{r,i} -> sum_j g[i][j] x_{r,j}`` for copies ``r = 1..m``."""
    n = g.dim
    sigma = {}
    for r in range(1, m + 1):
        xs = [Poly.var(Var.coord(r, j)) for j in range(1, n + 1)]
        for i in range(n):
            sigma[Var.coord(r, i + 1)] = sum((g.matrix[i][j] * xs[j] for j in range(n) if not g.matrix[i][j].is_zero), ZERO)
    return sigma


def act(g: Branch, f: Poly, m: int | None = None) -> Poly:
    """``f o g`` with the branch rewrite applied."""
    f = as_poly(f)
    if m is None:
        m = max((v.copy for v in f.variables() if v.is_coordinate), default=1)
    return normal_form(substitute(f, action_substitution(g, m)), g.rewrite)


def is_invariant(f: Poly, F: AutFamily | Branch, m: int | None = None) -> bool:
    branches = [F] if isinstance(F, Branch) else F.branches
    return all((act(g, f, m) - f).is_zero for g in branches)


# ---------------------------------------------------------------------------
# diagonal automorphisms


@dataclass
class DiagonalFamily:
    """Diagonal automorphisms ``diag(s_1 w_1, ..., s_n w_n)``.

    ``weights[i]`` maps a parameter name to an integer exponent; ``signs`` is
    a list of sign vectors, one per sign branch (default: all +1).
    """

    weights: list
    signs: list = field(default_factory=list)
    name: str = "delta"

    def __post_init__(self):
        self.weights = [{str(k): int(v) for k, v in w.items()} for w in self.weights]
        n = len(self.weights)
        if not self.signs:
            self.signs = [[1] * n]
        self.signs = [list(s) for s in self.signs]
        if any(len(s) != n or any(x not in (1, -1) for x in s) for s in self.signs):
            raise ValueError("sign vectors must have one entry +1 or -1 per basis index")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def parameters(self) -> list[str]:
        return sorted({p for w in self.weights for p in w})

    def branches(self) -> list[Branch]:
        """Explicit branches, one per sign choice.  Negative exponents are
        not supported here (all listed families use nonnegative weights)."""
        out = []
        n = self.dim
        for k, s in enumerate(self.signs):
            mat = [[ZERO] * n for _ in range(n)]
            for i, w in enumerate(self.weights):
                if any(e < 0 for e in w.values()):
                    raise ValueError("negative weights cannot be written as a polynomial branch")
                mat[i][i] = Poly.monomial({Var(p): e for p, e in w.items()}, s[i])
            name = self.name if len(self.signs) == 1 else f"{self.name}{k + 1}"
            out.append(Branch(mat, self.parameters, [Poly.var(Var(p)) for p in self.parameters], name))
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "weights": self.weights, "signs": self.signs}

    @classmethod
    def from_json(cls, data: Mapping) -> "DiagonalFamily":
        return cls(list(data["weights"]), list(data.get("signs", [])), data.get("name", "delta"))


def diagonal_variable_elimination(D: DiagonalFamily, m: int) -> set[Var]:
    """Coordinates that cannot occur in any invariant.

    For each parameter taken alone (the others set to 1), if every weight
    exponent is nonnegative then no coordinate with a positive exponent can
    occur, since a monomial of positive weight is never fixed.
    """
    idx: set[int] = set()
    for p in D.parameters:
        exps = [w.get(p, 0) for w in D.weights]
        if min(exps) >= 0:
            idx |= {i for i, e in enumerate(exps) if e > 0}
    return {Var.coord(r, i + 1) for r in range(1, m + 1) for i in idx}


def _degrees_by_index(mono, n: int) -> list[int]:
    if isinstance(mono, Poly):
        if len(mono) != 1:
            raise ValueError("expected a single monomial")
        ((exps, _),) = mono.terms()
        mono = exps
    if isinstance(mono, Mapping):
        deg = [0] * n
        for v, e in mono.items():
            v = Var(v) if isinstance(v, str) else v
            if not v.is_coordinate:
                raise ValueError(f"{v.name} is not a coordinate")
            deg[v.index - 1] += e
        return deg
    deg = list(mono)
    if len(deg) != n:
        raise ValueError(f"exponent vector must have length {n}")
    return deg


def diagonal_monomial_filter(D: DiagonalFamily, mono) -> bool:
    """True iff the monomial is fixed by every diagonal automorphism.

    ``mono`` is a monomial Poly, a ``{Var: exponent}`` map, or a vector of
    degrees per basis index (summed over copies).
    """
    deg = _degrees_by_index(mono, D.dim)
    for p in D.parameters:
        if sum(d * w.get(p, 0) for d, w in zip(deg, D.weights)) != 0:
            return False
    for s in D.signs:
        sign = 1
        for d, x in zip(deg, s):
            if x < 0 and d % 2:
                sign = -sign
        if sign != 1:
            return False
    return True


def family_from_matrices(matrices: Sequence, name: str = "", rewrite: RewriteSystem | None = None) -> AutFamily:
    """Convenience constructor from ``(matrix, params, nonvanishing)`` triples of strings."""
    branches = []
    for k, (mat, params, nv) in enumerate(matrices):
        branches.append(Branch([[parse_poly(x) if isinstance(x, str) else x for x in row] for row in mat],
                               list(params), [parse_poly(f) if isinstance(f, str) else f for f in nv],
                               f"g{k + 1}" if len(matrices) > 1 else "g", rewrite))
    return AutFamily(branches, name)


__all__ = [
    "AutCheck", "AutFamily", "Branch", "DeterminantError", "DiagonalFamily", "act", "action_substitution",
    "compose", "det", "diagonal_monomial_filter", "diagonal_variable_elimination", "family_from_matrices",
    "identity_branch", "is_invariant", "matmul", "rename_parameters", "verify_aut_family", "verify_branch",
]
