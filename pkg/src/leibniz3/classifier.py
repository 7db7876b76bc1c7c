"""Recognise a 3-dimensional rational Leibniz algebra from its structure table.

Decision table for non-nilpotent input, with ``tL = tr(chi_1 chi_0)``,
``tR = tr(chi_0 chi_1)``, ``q = tr((chi_0 chi_1) chi_1)`` and ``d`` the
dimension of the derivation algebra::

    tL != 0, d = 2                         L1
    tL != 0, d = 3, tR = c*tL, c = -1      L3
    tL != 0, d = 3, tR = c*tL, c != -1     L2 with lambda = c + 1
    tL == 0, d = 2, tR == 0                L6
    tL == 0, d = 2, q = k*tR^2, k = 1      L9
    tL == 0, d = 2, q = k*tR^2, k != 1     L7 with lambda = (k - 1)/2
    tL == 0, d = 3                         L7 with lambda = 0
    tL == 0, d = 4                         L10

Nilpotent algebras (both traces vanish) are told apart by the nilpotency
class (4 for L8), the derivation dimension (5 for L11) and commutativity
(L5 is commutative, L4 is not).  For L4 the parameter is read off the
product form ``B`` on ``A/A^2`` with values in ``A^2``: with ``S`` and ``K``
its symmetric and antisymmetric parts, ``det S / det K = 4 lambda - 1`` is
unchanged by any change of basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (StructureTable, check_leibniz, commutator_span, derivation_dim, leib_ideal, mul, nilpotency,
                      right_annihilator)
from .exactpoly import Poly, Var, format_poly
from .linalg import nullspace_int, row_basis
from .traces import TraceWord, trace_direct

EXIT_CLASSIFIED = 0
EXIT_NOT_LEIBNIZ = 2
EXIT_LIE = 3
EXIT_UNRECOGNIZED = 4

DECISION_TABLE = __doc__.split("::\n\n")[1].split("\n\n")[0]


class ClassifyError(ValueError):
    pass


@dataclass
class ClassificationReport:
    leibniz: bool
    lie: bool = False
    nilpotent: bool | None = None
    ncl: int | None = None
    family: str | None = None
    recovered_lambda: Fraction | None = None
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if not self.leibniz:
            return EXIT_NOT_LEIBNIZ
        if self.lie:
            return EXIT_LIE
        if self.family is None or self.family == "unrecognized":
            return EXIT_UNRECOGNIZED
        return EXIT_CLASSIFIED

    @property
    def label(self) -> str:
        if self.family is None:
            return "none"
        if self.recovered_lambda is not None:
            return f"{self.family}^{self.recovered_lambda}"
        return self.family

    def to_json(self) -> dict:
        ev = {}
        for k, v in self.evidence.items():
            if isinstance(v, Fraction):
                v = str(v)
            elif isinstance(v, (list, tuple)):
                v = [str(x) if isinstance(x, Fraction) else x for x in v]
            ev[k] = v
        return {
            "leibniz": self.leibniz,
            "lie": self.lie,
            "nilpotent": self.nilpotent,
            "ncl": self.ncl,
            "family": self.family,
            "recovered_lambda": None if self.recovered_lambda is None else str(self.recovered_lambda),
            "evidence": ev,
            "notes": list(self.notes),
            "exit_code": self.exit_code,
        }


def _linear_functional(p: Poly, n: int) -> list[Fraction]:
    return [p.coefficient({Var.coord(1, i): 1}) for i in range(1, n + 1)]


def _ratio(num: Sequence[Fraction], den: Sequence[Fraction]) -> Fraction | None:
    """``c`` with ``num = c*den`` (``den`` nonzero), else ``None``.
    The constant is read off the first nonzero coordinate of ``den``."""
    k = next(i for i, x in enumerate(den) if x)
    c = Fraction(num[k]) / den[k]
    return c if all(a == c * b for a, b in zip(num, den)) else None


def _poly_ratio(num: Poly, den: Poly) -> Fraction | None:
    lead, coeff = den.leading_term()
    c = Fraction(num.coefficient(_exps(lead))) / coeff
    return c if (num - den * c).is_zero else None


def _exps(mono: tuple) -> dict:
    return {Var.from_id(mono[k]): mono[k + 1] for k in range(0, len(mono), 2)}


def _det2(M) -> Fraction:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def l4_parameter(T: StructureTable) -> Fraction | None:
    """Recover lambda for an algebra isomorphic to some L4^lambda.

    Needs ``A^2`` one-dimensional and annihilated on both sides.
    """
    n = T.dim
    chain = [T.product(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    rows = [[x.constant_value for x in v] for v in chain if any(not x.is_zero for x in v)]
    if not rows:
        return None
    sq = row_basis(rows, n)
    if len(sq) != 1:
        return None
    w = [x.constant_value for x in sq[0]]
    # complement of span{w}: standard basis vectors not parallel to it
    k = next(i for i, x in enumerate(w) if x)
    comp = [i for i in range(n) if i != k]
    basis = [tuple(Poly.const(Fraction(int(j == i))) for j in range(n)) for i in comp]
    B = [[Fraction(0)] * len(basis) for _ in basis]
    for a, u in enumerate(basis):
        for b, v in enumerate(basis):
            prod = [x.constant_value for x in mul(T, u, v)]
            c = prod[k] / w[k]
            if any(p != c * q for p, q in zip(prod, w)):
                return None
            B[a][b] = c
    S = [[(B[a][b] + B[b][a]) / 2 for b in range(2)] for a in range(2)]
    K = [[(B[a][b] - B[b][a]) / 2 for b in range(2)] for a in range(2)]
    dk = _det2(K)
    if dk == 0:
        return None
    return (_det2(S) / dk + 1) / 4


def _check_table(T: StructureTable) -> None:
    if T.dim != 3:
        raise ClassifyError(f"only 3-dimensional algebras are classified (got dimension {T.dim})")
    if not T.is_rational:
        raise ClassifyError("the table must have rational entries (no parameters)")


def classify(T: StructureTable) -> ClassificationReport:
    _check_table(T)
    lc = check_leibniz(T)
    if not lc:
        rep = ClassificationReport(False)
        i, j, k = lc.witness
        rep.evidence["leibniz_witness"] = [i, j, k]
        rep.evidence["leibniz_residual"] = [format_poly(x) for x in lc.residual]
        rep.notes.append(f"(e{i} e{j}) e{k} != (e{i} e{k}) e{j} + e{i} (e{j} e{k})")
        return rep
    leib = leib_ideal(T).dim
    if leib == 0:
        rep = ClassificationReport(True, lie=True)
        rep.evidence["leib_dim"] = 0
        rep.notes.append("Lie algebra, outside the scope of the classification")
        return rep

    n = T.dim
    tL = _linear_functional(trace_direct(T, TraceWord.parse("L1"), 1).value, n)
    tR = _linear_functional(trace_direct(T, TraceWord.parse("R1"), 1).value, n)
    q = trace_direct(T, TraceWord.parse("R1.R1"), 1).value
    nil = nilpotency(T)
    d = derivation_dim(T)
    ev = {
        "trL": tL,
        "trR": tR,
        "trRR": format_poly(q, shorthand=True),
        "derivation_dim": d,
        "leib_dim": leib,
        "ncl": "inf" if nil.ncl is None else nil.ncl,
        "chain_dims": nil.chain_dims,
    }
    rep = ClassificationReport(True, evidence=ev, ncl=nil.ncl)
    zero_traces = not any(tR) and q.is_zero
    rep.nilpotent = nil.ncl is not None
    if zero_traces != rep.nilpotent:
        rep.family = "unrecognized"
        rep.notes.append("trace test and nilpotency chain disagree")
        return rep
    if rep.nilpotent:
        return _classify_nilpotent(T, rep)
    return _classify_non_nilpotent(rep, tL, tR, q, d)


def _classify_nilpotent(T: StructureTable, rep: ClassificationReport) -> ClassificationReport:
    ann = right_annihilator(T).dim
    comm = commutator_span(T).dim
    d = rep.evidence["derivation_dim"]
    rep.evidence["annihilator_dim"] = ann
    rep.evidence["commutator_dim"] = comm
    leib = rep.evidence["leib_dim"]
    if rep.ncl == 4 and (ann, leib, d) == (2, 2, 3):
        rep.family = "L8"
    elif rep.ncl == 3 and (ann, leib, d, comm) == (2, 1, 5, 0):
        rep.family = "L11"
    elif rep.ncl == 3 and (ann, leib, d, comm) == (1, 1, 4, 0):
        rep.family = "L5"
    elif rep.ncl == 3 and leib == 1 and d == 4 and comm == 1:
        lam = l4_parameter(T)
        if lam is None or (ann == 2) != (lam == 0):
            rep.family = "unrecognized"
            rep.notes.append("looks like L4 but the parameter could not be read off consistently")
        else:
            rep.family = "L4"
            rep.recovered_lambda = lam
    else:
        rep.family = "unrecognized"
    return rep


def _classify_non_nilpotent(rep, tL, tR, q, d) -> ClassificationReport:
    if any(tL):
        if d == 2:
            rep.family = "L1"
        elif d == 3:
            c = _ratio(tR, tL)
            rep.evidence["trR_over_trL"] = c
            if c is None:
                rep.family = "unrecognized"
                rep.notes.append("trR is not proportional to trL")
            elif c == -1:
                rep.family = "L3"
            else:
                rep.family = "L2"
                rep.recovered_lambda = c + 1
        else:
            rep.family = "unrecognized"
        return rep
    if d == 2:
        if not any(tR):
            rep.family = "L6"
            return rep
        tr_poly = sum((c * Poly.var(Var.coord(1, i + 1)) for i, c in enumerate(tR)), Poly())
        k = _poly_ratio(q, tr_poly * tr_poly)
        rep.evidence["trRR_over_trR_squared"] = k
        if k is None:
            rep.family = "unrecognized"
            rep.notes.append("tr((chi_0 chi_1) chi_1) is not a multiple of tr(chi_0 chi_1)^2")
        elif k == 1:
            rep.family = "L9"
        else:
            rep.family = "L7"
            rep.recovered_lambda = (k - 1) / 2
    elif d == 3 and any(tR):
        rep.family = "L7"
        rep.recovered_lambda = Fraction(0)
    elif d == 4 and any(tR):
        rep.family = "L10"
    else:
        rep.family = "unrecognized"
    return rep


# ---------------------------------------------------------------------------
# random changes of basis


def random_invertible(rng: random.Random, n: int = 3, spread: int = 4) -> list[list[Fraction]]:
    """A random invertible rational matrix with small entries."""
    while True:
        M = [[Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        if not nullspace_int(M, n):
            return M


def conjugate(T: StructureTable, seed: int | None = None, rng: random.Random | None = None) -> tuple:
    """``T`` rewritten in a random basis; returns ``(table, matrix)``."""
    rng = rng or random.Random(seed)
    P = random_invertible(rng, T.dim)
    return T.change_basis(P), P
