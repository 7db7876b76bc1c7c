"""Invariant polynomials of bounded multidegree by exact linear algebra.

For a multidegree ``d`` the unknown invariant is ``f = sum_w c_w w`` over the
monomials ``w`` of multidegree ``d``.  For every branch ``g`` the coefficients
of ``f o g - f`` (as a polynomial in the branch parameters and coordinates)
give linear equations in the ``c_w``; the invariants are the nullspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import StructureTable, mul
from .autgroup import AutFamily, Branch, DiagonalFamily, act, diagonal_monomial_filter
from .exactpoly import (LAMBDA, LAURENT_LAMBDA, MU, ONE, XI1, XI2, XI_RELATIONS, ZERO, Poly, Var, as_poly, format_poly,
                        normal_form, substitute)
from .linalg import nullspace, span_basis, span_dim
from .traces import multidegrees_up_to


def coordinate_monomials(n: int, d: Sequence[int]) -> list[Poly]:
    """All monomials in ``x_{r,i}`` (``i <= n``) of multidegree ``d``."""
    per_copy = []
    for r, k in enumerate(d, start=1):
        opts = []
        for combo in itertools.combinations_with_replacement(range(1, n + 1), k):
            exps: dict[Var, int] = {}
            for i in combo:
                v = Var.coord(r, i)
                exps[v] = exps.get(v, 0) + 1
            opts.append(exps)
        per_copy.append(opts)
    out = []
    for choice in itertools.product(*per_copy):
        exps = {}
        for part in choice:
            exps.update(part)
        out.append(Poly.monomial(exps))
    return out


def multidegree_of(p: Poly, m: int) -> tuple[int, ...] | None:
    """Multidegree of a homogeneous polynomial, ``None`` if inhomogeneous.
    The zero polynomial has no multidegree."""
    degs = set()
    for exps, _ in p.terms():
        d = [0] * m
        for v, e in exps.items():
            if v.is_coordinate:
                if v.copy > m:
                    raise ValueError(f"{v.name} exceeds m = {m}")
                d[v.copy - 1] += e
        degs.add(tuple(d))
    return degs.pop() if len(degs) == 1 else None


@dataclass
class InvariantSpace:
    pieces: dict  # multidegree -> list of Poly
    m: int
    n: int
    algebra: str = ""
    branches: list = field(default_factory=list)
    bound: int | None = None
    regime: str = ""

    def basis(self, d: Sequence[int] | None = None) -> list[Poly]:
        """Basis of one multidegree, or of everything computed when ``d`` is omitted."""
        if d is None:
            return [p for piece in self.pieces.values() for p in piece]
        return self.pieces[tuple(d)]

    def dim(self, d: Sequence[int]) -> int:
        return len(self.pieces[tuple(d)])

    def dims(self) -> dict:
        return {d: len(b) for d, b in self.pieces.items()}

    def contains(self, p: Poly) -> bool:
        p = as_poly(p)
        if p.is_zero:
            return True
        d = multidegree_of(p, self.m)
        if d is None or d not in self.pieces:
            raise ValueError("polynomial is not homogeneous of a computed multidegree")
        basis = self.pieces[d]
        return span_dim(basis + [p]) == len(basis)

    def to_json(self, shorthand: bool | None = None) -> dict:
        sh = self.n == 3 if shorthand is None else shorthand
        return {
            "algebra": self.algebra,
            "m": self.m,
            "bound": self.bound,
            "regime": self.regime,
            "branches": list(self.branches),
            "pieces": [
                {"multidegree": list(d), "dim": len(b), "basis": [format_poly(p, sh) for p in b]}
                for d, b in self.pieces.items()
            ],
        }


def _branch_params(g: Branch) -> set[Var]:
    return {Var(p) for p in g.params}


def _clear_mu(row: list[Poly]) -> list[Poly]:
    """Scale a row by a power of lambda so that ``mu = 1/lambda`` disappears."""
    k = max((x.degree(MU) for x in row if not x.is_zero), default=0)
    if k == 0:
        return row
    scale = Poly.var(LAMBDA) ** k
    out = []
    for x in row:
        y = normal_form(x * scale, LAURENT_LAMBDA)
        if MU in y.variables():
            raise ArithmeticError("could not clear 1/lambda from an invariance equation")
        out.append(y)
    return out


def invariance_rows(monos: Sequence[Poly], branches: Iterable[Branch], m: int) -> list[list[Poly]]:
    """Linear equations on the coefficients ``c_w`` (deduplicated)."""
    rows = []
    seen = set()
    for g in branches:
        keep_params = _branch_params(g)
        table: dict[tuple, list[Poly]] = {}
        for col, w in enumerate(monos):
            diff = act(g, w, m) - w
            for key, coeff in diff.split(lambda v: v.is_coordinate or v in keep_params).items():
                table.setdefault(key, [ZERO] * len(monos))[col] = coeff
        for row in table.values():
            row = _clear_mu(row)
            key = tuple(row)
            if key not in seen and any(not x.is_zero for x in row):
                seen.add(key)
                rows.append(row)
    return rows


def invariant_piece(n: int, branches: Sequence[Branch], d: Sequence[int], diag: DiagonalFamily | None = None,
                    nonvanishing: Sequence = (), generic: bool = True) -> list[Poly]:
    m = len(d)
    monos = coordinate_monomials(n, d)
    if diag is not None:
        monos = [w for w in monos if diagonal_monomial_filter(diag, w)]
    if not monos:
        return []
    rows = invariance_rows(monos, branches, m)
    if not rows:
        return list(monos)
    nonvanishing = list(nonvanishing)
    vecs = nullspace(rows, len(monos), nonvanishing, generic=generic)
    out = []
    for v in vecs:
        p = ZERO
        for c, w in zip(v, monos):
            if not c.is_zero:
                p = p + c * w
        out.append(p)
    return out


def invariant_space(T: StructureTable | None, F: AutFamily | Sequence[Branch], m: int, bound: int | None = None,
                    diag: DiagonalFamily | None = None, degrees: Iterable[Sequence[int]] | None = None,
                    generic: bool = True, name: str = "") -> InvariantSpace:
    """Invariants of multidegree ``d`` for every ``|d| <= bound`` (or for the
    listed ``degrees``).  ``diag`` prunes monomials that the diagonal
    automorphisms already rule out."""
    branches = F.branches if isinstance(F, AutFamily) else list(F)
    if not branches:
        raise ValueError("at least one branch is required")
    n = branches[0].dim
    if T is not None and T.dim != n:
        raise ValueError("branch size does not match the table dimension")
    if degrees is None:
        if bound is None or bound < 0:
            raise ValueError("bound must be >= 0")
        degrees = multidegrees_up_to(m, bound)
    degrees = [tuple(d) for d in degrees]
    if any(len(d) != m for d in degrees):
        raise ValueError(f"multidegrees must have length m = {m}")
    nonvanishing = list(T.constraints) if T is not None else []
    if any(MU in g.variables for g in branches):
        nonvanishing.append(Poly.var(LAMBDA))
    pieces = {d: invariant_piece(n, branches, d, diag, nonvanishing, generic) for d in degrees}
    params = set()
    if T is not None:
        params = {v.name for v in T.parameters()}
    regime = "symbolic " + ", ".join(sorted(params)) if params else "rational"
    return InvariantSpace(pieces, m, n, name or (T.name if T is not None else ""), [g.name for g in branches],
                          bound, regime)


# ---------------------------------------------------------------------------
# generation


@dataclass
class GenerationRow:
    multidegree: tuple
    span_dim: int
    space_dim: int

    @property
    def equal(self) -> bool:
        return self.span_dim == self.space_dim


@dataclass
class GenerationReport:
    rows: list
    non_invariant: list  # generators that are not in the computed space
    inhomogeneous: list

    @property
    def ok(self) -> bool:
        return all(r.equal for r in self.rows) and not self.non_invariant and not self.inhomogeneous

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rows": [{"multidegree": list(r.multidegree), "span_dim": r.span_dim, "space_dim": r.space_dim,
                      "equal": r.equal} for r in self.rows],
            "non_invariant": [format_poly(p) for p in self.non_invariant],
            "inhomogeneous": [format_poly(p) for p in self.inhomogeneous],
        }


def product_spans(generators: Sequence[Poly], m: int, degrees: Iterable[tuple],
                  nonvanishing: Sequence = ()) -> dict[tuple, list[Poly]]:
    """Basis of the span of all products of generators, per multidegree."""
    gens: dict[tuple, list[Poly]] = {}
    for g in generators:
        g = as_poly(g)
        if g.is_zero or g.is_constant:
            continue
        d = multidegree_of(g, m)
        if d is None:
            raise ValueError(f"generator {g} is not multihomogeneous")
        gens.setdefault(d, []).append(g)
    wanted = sorted({tuple(d) for d in degrees}, key=lambda d: (sum(d), d))
    top = tuple(max((d[k] for d in wanted), default=0) for k in range(m))
    # every multidegree below the top one is needed as an intermediate
    below = [d for d in itertools.product(*(range(t + 1) for t in top))]
    below.sort(key=sum)
    span: dict[tuple, list[Poly]] = {}
    for d in below:
        if sum(d) == 0:
            span[d] = [ONE]
            continue
        cands = []
        for e, gs in gens.items():
            rest = tuple(a - b for a, b in zip(d, e))
            if min(rest) < 0:
                continue
            for g in gs:
                cands.extend(g * s for s in span[rest])
        span[d] = span_basis(cands, nonvanishing=nonvanishing)
    return {d: span[d] for d in wanted}


def check_generation(claimed_generators: Sequence[Poly], space: InvariantSpace,
                     nonvanishing: Sequence = ()) -> GenerationReport:
    gens = [as_poly(g) for g in claimed_generators]
    inhomogeneous = [g for g in gens if not g.is_zero and multidegree_of(g, space.m) is None]
    homog = [g for g in gens if g not in inhomogeneous]
    non_invariant = []
    for g in homog:
        if g.is_zero or g.is_constant:
            continue
        d = multidegree_of(g, space.m)
        if d in space.pieces and not space.contains(g):
            non_invariant.append(g)
    spans = product_spans(homog, space.m, space.pieces.keys(), nonvanishing)
    rows = [GenerationRow(d, len(spans[d]), len(b)) for d, b in space.pieces.items()]
    return GenerationReport(rows, non_invariant, inhomogeneous)


# ---------------------------------------------------------------------------
# the unipotent 2x2 group


def unipotent2_branch() -> Branch:
    a = Poly.var(Var.param("alpha"))
    return Branch([[ONE, a], [ZERO, ONE]], ["alpha"], [], "u")


def unipotent2_generators(m: int) -> list[Poly]:
    """1, the second coordinates, and the 2x2 minors ``x_{r1}x_{s2} - x_{r2}x_{s1}``."""
    x = lambda r, i: Poly.var(Var.coord(r, i))  # noqa: E731
    gens = [ONE] + [x(r, 2) for r in range(1, m + 1)]
    gens += [x(r, 1) * x(s, 2) - x(r, 2) * x(s, 1) for r in range(1, m + 1) for s in range(r + 1, m + 1)]
    return gens


def unipotent2_invariants(m: int, bound: int | None = None, degrees=None) -> tuple[InvariantSpace, GenerationReport]:
    space = invariant_space(None, [unipotent2_branch()], m, bound, degrees=degrees, name="unipotent-2x2")
    return space, check_generation(unipotent2_generators(m), space)


# ---------------------------------------------------------------------------
# identification of copies


def pi_substitution(p: Poly, partition: Sequence[int]) -> Poly:
    """Identify copies: copy ``l`` of ``t = sum(partition)`` goes to the block
    ``j`` with ``partition[0] + ... + partition[j-1] < l <= ... + partition[j]``."""
    part = [int(k) for k in partition]
    if any(k < 0 for k in part):
        raise ValueError("partition entries must be nonnegative")
    t = sum(part)
    target = []
    for j, k in enumerate(part, start=1):
        target.extend([j] * k)
    sigma = {}
    for v in as_poly(p).variables():
        if not v.is_coordinate:
            continue
        if v.copy > t:
            raise ValueError(f"copy index {v.copy} out of range for a partition of {t}")
        sigma[v] = Poly.var(Var.coord(target[v.copy - 1], v.index))
    return substitute(p, sigma)


def compositions(t: int, m: int) -> list[tuple[int, ...]]:
    """All ``(r_1..r_m)`` with positive entries summing to ``t``."""
    return [c for c in itertools.product(range(1, t + 1), repeat=m) if sum(c) == t]


# ---------------------------------------------------------------------------
# the change of basis for L7


@dataclass
class WitnessCheck:
    name: str
    residual: Poly

    @property
    def ok(self) -> bool:
        return self.residual.is_zero


@dataclass
class WitnessReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": c.name, "ok": c.ok, "residual": format_poly(c.residual)}
                                          for c in self.checks]}


class _Frac:
    """Numerator/denominator pair; denominators are products of the declared
    nonvanishing factors, so comparing cross products is exact."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        self.num, self.den = as_poly(num), as_poly(den)

    def __mul__(self, other):
        other = other if isinstance(other, _Frac) else _Frac(other)
        return _Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __add__(self, other):
        other = other if isinstance(other, _Frac) else _Frac(other)
        return _Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def residual(self, other) -> Poly:
        other = other if isinstance(other, _Frac) else _Frac(other)
        return normal_form(self.num * other.den - other.num * self.den, XI_RELATIONS)


def verify_L7_witness(table: StructureTable | None = None) -> WitnessReport:
    """Check the basis change ``v1 = xi1 e1 + e2``, ``v2 = xi2 e1 + e2``,
    ``v3 = nu e3`` that turns L7 into the tableau with ``v1 v3 = lam' v1``,
    ``v2 v3 = v2`` and all other products zero.

    ``xi1, xi2`` are the roots of ``t^2 + t - lambda``; ``lam' = xi2/xi1``
    and ``nu = (2 xi1 + 1)/(xi1 - 2 lambda)``.  Both denominators are
    nonzero for ``lambda`` outside ``{0, -1/4}``.
    """
    if table is None:
        from .catalog import get_family
        table = get_family("L7").table
    lam, x1, x2 = Poly.var(LAMBDA), Poly.var(XI1), Poly.var(XI2)
    nu = _Frac(2 * x1 + 1, x1 - 2 * lam)
    lam2 = _Frac(x2, x1)
    checks = [
        WitnessCheck("nu*lambda = lambda'*xi1", (nu * lam).residual(lam2 * x1)),
        WitnessCheck("nu*(xi1 + 1) = lambda'", (nu * (x1 + 1)).residual(lam2)),
        WitnessCheck("nu*lambda = xi2", (nu * lam).residual(_Frac(x2))),
        WitnessCheck("nu*(xi2 + 1) = 1", (nu * (x2 + 1)).residual(_Frac(ONE))),
    ]
    # the new basis, as fraction vectors over the old one
    v = [
        ([x1, ONE, ZERO], ONE),
        ([x2, ONE, ZERO], ONE),
        ([ZERO, ZERO, nu.num], nu.den),
    ]
    expected = {
        (0, 2): ([x2 * x1, x2, ZERO], x1),  # lambda' v1
        (1, 2): ([x2, ONE, ZERO], ONE),  # v2
    }
    for i in range(3):
        for j in range(3):
            num = mul(table, v[i][0], v[j][0])
            den = v[i][1] * v[j][1]
            exp_num, exp_den = expected.get((i, j), ([ZERO] * 3, ONE))
            res = ZERO
            for a, b in zip(num, exp_num):
                r = normal_form(a * exp_den - b * den, XI_RELATIONS)
                if not r.is_zero:
                    res = r
                    break
            checks.append(WitnessCheck(f"v{i + 1}*v{j + 1}", res))
    return WitnessReport(checks)


def trace_inclusion(space: InvariantSpace, values: Iterable[Poly]) -> list[Poly]:
    """Trace values (of computed multidegrees) that fail to lie in the space."""
    bad = []
    for p in values:
        p = as_poly(p)
        if p.is_zero:
            continue
        d = multidegree_of(p, space.m)
        if d in space.pieces and not space.contains(p):
            bad.append(p)
    return bad
