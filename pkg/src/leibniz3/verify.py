"""The verification suite: every recorded claim about the catalog, re-derived.

Each check returns a :class:`CheckResult`; :func:`run_verification_suite`
runs them (optionally in a thread pool sized by ``LEIBNIZ_THREADS``) and
collects a :class:`SuiteReport`.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from .algebra import StructureTable, check_leibniz, derivation_dim, nilpotency, right_annihilator
from .autgroup import verify_aut_family
from .catalog import FAMILY_NAMES, FamilyRecord, family_instances, get_family, sample_lambdas
from .classifier import classify, conjugate
from .exactpoly import Poly, Var, format_poly
from .invariants import (check_generation, invariant_space, unipotent2_invariants, verify_L7_witness)
from .traces import (TraceWord, enumerate_trace_words, multidegrees_up_to, trace_closed_form, trace_direct,
                     trace_linear_n3, trace_subalgebra_span)

NILPOTENT_FAMILIES = ("L4", "L5", "L8", "L11")


@dataclass
class CheckResult:
    id: int
    claim: str
    topic: str
    ok: bool
    details: list = field(default_factory=list)
    runtime: float = 0.0

    def to_json(self) -> dict:
        return {"id": self.id, "claim": self.claim, "topic": self.topic, "ok": self.ok,
                "runtime": round(self.runtime, 4), "details": [str(d) for d in self.details]}


@dataclass
class SuiteReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"[{'PASS' if c.ok else 'FAIL'}] {c.id:2d} {c.claim} ({c.topic}; {c.runtime:.2f}s)")
            if not c.ok:
                lines.extend(f"       {d}" for d in c.details[:10])
        passed = sum(c.ok for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def generic_table(n: int = 3) -> StructureTable:
    """The table whose ``n^3`` structure constants are independent parameters."""
    ent = [[[Poly.var(Var.param(f"s{i}{j}{l}")) for l in range(1, n + 1)] for j in range(1, n + 1)]
           for i in range(1, n + 1)]
    return StructureTable(n, ent, (), f"generic{n}")


def _records(overrides: Mapping[str, StructureTable] | None, instances: bool = False,
             include_zero: bool = True) -> list[FamilyRecord]:
    """Symbolic records (plus the lambda = 0 cases of L4 and L7), or every
    sampled instance when ``instances`` is set."""
    if instances:
        recs = family_instances(include_symbolic=True)
    else:
        recs = [get_family(n) for n in FAMILY_NAMES]
        if include_zero:
            recs += [get_family("L4", 0), get_family("L7", 0)]
    if overrides:
        recs = [replace(r, table=overrides[r.name]) if r.name in overrides and r.lam is None else r for r in recs]
    return recs


# ---------------------------------------------------------------------------
# individual checks


def check_leibniz_suite(overrides=None) -> tuple[bool, list]:
    details = []
    for rec in _records(overrides, include_zero=False):
        res = check_leibniz(rec.table)
        if not res:
            details.append(f"{rec.label}: fails at {res.witness}")
    return not details, details


def check_automorphy_suite(overrides=None) -> tuple[bool, list]:
    details = []
    for rec in _records(overrides):
        for branch in rec.aut.branches:
            res = verify_aut_family(rec.table, branch)
            if not res:
                details.append(f"{rec.label} branch {branch.name}: g(e{res.witness[1]}e{res.witness[2]}) mismatch")
        if rec.diag is not None:
            for branch in rec.diag.branches():
                res = verify_aut_family(rec.table, branch)
                if not res:
                    details.append(f"{rec.label} diagonal {branch.name}: mismatch at {res.witness[1:3]}")
    return not details, details


def trace_table_mismatches(rec: FamilyRecord, m: int = 2) -> list[str]:
    out = []
    for word, expected in rec.expected_trace_table(m).items():
        w = TraceWord.parse(word)
        for engine, fn in (("direct", trace_direct), ("closed form", trace_closed_form)):
            got = fn(rec.table, w, m).value
            if got != expected:
                out.append(f"{rec.label} {w.expression()} [{engine}]: expected {format_poly(expected, True)},"
                           f" got {format_poly(got, True)}")
    return out


def check_trace_table(overrides=None) -> tuple[bool, list]:
    details = []
    for rec in _records(overrides):
        details += trace_table_mismatches(rec)
    G = generic_table()
    for w in enumerate_trace_words(2, 2):
        a = trace_direct(G, w, 2).value
        b = trace_closed_form(G, w, 2).value
        if a != b:
            details.append(f"generic table: engines disagree on {w}")
    return not details, details


def check_linear_traces(overrides=None) -> tuple[bool, list]:
    details = []
    G = generic_table()
    for side in ("L", "R"):
        for r in (1, 2):
            a = trace_linear_n3(G, side, r).value
            b = trace_closed_form(G, TraceWord(((side, r),)), 2).value
            if a != b:
                details.append(f"side {side}, copy {r}: specialised formula disagrees")
    return not details, details


INVARIANT_CASES = ((1, 4, None), (2, 3, None), (3, None, [(1, 1, 1)]))


def check_invariant_rings(overrides=None, prune: bool = True) -> tuple[bool, list]:
    details = []
    for rec in _records(overrides):
        for m, bound, degrees in INVARIANT_CASES:
            space = invariant_space(rec.table, rec.aut, m, bound, diag=rec.diag if prune else None, degrees=degrees)
            rep = check_generation(rec.generators(m), space, rec.table.constraints)
            if not rep.ok:
                bad = [r.multidegree for r in rep.rows if not r.equal]
                details.append(f"{rec.label} m={m}: generator span differs at {bad};"
                               f" non-invariant generators {[format_poly(p, True) for p in rep.non_invariant]}")
    return not details, details


def check_unipotent(overrides=None) -> tuple[bool, list]:
    details = []
    for m in (1, 2, 3):
        space, rep = unipotent2_invariants(m, 3)
        if not rep.ok:
            details.append(f"m={m}: generator span differs at {[r.multidegree for r in rep.rows if not r.equal]}")
    return not details, details


def trace_vs_invariant_dims(rec: FamilyRecord, m: int = 2, bound: int = 3) -> dict:
    span = trace_subalgebra_span(rec.table, bound, m)
    space = invariant_space(rec.table, rec.aut, m, bound, diag=rec.diag)
    return {d: (space.dim(d), len(span[d])) for d in multidegrees_up_to(m, bound)}


def check_trace_generation(overrides=None) -> tuple[bool, list]:
    details = []
    for rec in _records(overrides):
        if rec.nilpotent:
            continue
        dims = trace_vs_invariant_dims(rec)
        if rec.name in ("L3", "L9"):
            if dims[(1, 1)] != (2, 1):
                details.append(f"{rec.label}: at (1,1) invariants/traces = {dims[(1, 1)]}, expected (2, 1)")
        else:
            bad = {d: v for d, v in dims.items() if v[0] != v[1]}
            if bad:
                details.append(f"{rec.label}: invariant and trace dimensions differ at {bad}")
    return not details, details


def zero_trace_condition(T: StructureTable) -> bool:
    return (trace_direct(T, TraceWord.parse("R1"), 1).value.is_zero
            and trace_direct(T, TraceWord.parse("R1.R1"), 1).value.is_zero)


def check_nilpotent_equivalence(overrides=None) -> tuple[bool, list]:
    details = []
    found = set()
    for rec in _records(overrides, instances=True):
        T = rec.table
        zero = zero_trace_condition(T)
        ncl = nilpotency(T).ncl
        space = invariant_space(T, rec.aut, 1, 2, diag=rec.diag)
        trivial = space.dims() == {(0,): 1, (1,): 0, (2,): 0}
        if zero:
            found.add(rec.name)
        if not (zero == (ncl is not None) == trivial):
            details.append(f"{rec.label}: zero traces {zero}, ncl {ncl}, trivial invariants {trivial}")
        if ncl != rec.expected_ncl:
            details.append(f"{rec.label}: ncl {ncl}, expected {rec.expected_ncl}")
        if ncl is not None and ncl not in (3, 4):
            details.append(f"{rec.label}: ncl {ncl} outside {{3, 4}}")
    if found != set(NILPOTENT_FAMILIES):
        details.append(f"zero-trace families {sorted(found)}, expected {list(NILPOTENT_FAMILIES)}")
    return not details, details


def check_dimensions(overrides=None) -> tuple[bool, list]:
    details = []
    for rec in _records(overrides, instances=True):
        d = derivation_dim(rec.table)
        if d != rec.expected_aut_dim or d != rec.aut.parameter_count:
            details.append(f"{rec.label}: derivation dim {d}, recorded {rec.expected_aut_dim},"
                           f" branch parameters {rec.aut.parameter_count}")
        if not 2 <= d <= 5:
            details.append(f"{rec.label}: dimension {d} outside [2, 5]")
    return not details, details


def check_classifier(overrides=None, seed: int = 20240611, conjugations: int = 3) -> tuple[bool, list]:
    details = []
    rng = random.Random(seed)
    for name in FAMILY_NAMES:
        base = get_family(name)
        if base.nilpotent:
            continue
        lams = [None] if not base.has_lambda else [q for q in sample_lambdas() if q not in base.excluded_lambda]
        for lam in lams:
            rec = get_family(name, lam)
            table = overrides[name] if overrides and name in overrides and lam is None else rec.table
            for _ in range(conjugations):
                T, _ = conjugate(table, rng=rng)
                rep = classify(T)
                if rep.family != name or rep.recovered_lambda != lam:
                    details.append(f"{rec.label}: classified as {rep.label}")
    return not details, details


def check_l7_witness(overrides=None) -> tuple[bool, list]:
    rep = verify_L7_witness()
    return rep.ok, [f"{c.name}: residual {format_poly(c.residual)}" for c in rep.checks if not c.ok]


def check_annihilators(overrides=None) -> tuple[bool, list]:
    details = []
    for name in ("L5", "L11"):
        rec = get_family(name)
        T = overrides[name] if overrides and name in overrides else rec.table
        d = right_annihilator(T).dim
        if d != rec.expected_annihilator_dim:
            details.append(f"{name}: right annihilator has dimension {d}, expected {rec.expected_annihilator_dim}")
    return not details, details


CHECKS: list[tuple[int, str, str, Callable]] = [
    (1, "all families satisfy the Leibniz identity", "multiplication tables", check_leibniz_suite),
    (2, "every listed automorphism branch and diagonal family is an automorphism", "automorphism groups",
     check_automorphy_suite),
    (3, "both trace engines reproduce the trace table; engines agree on the generic table", "operator traces",
     check_trace_table),
    (4, "specialised linear trace formulas agree with the general sum", "operator traces", check_linear_traces),
    (5, "invariant spaces equal the span of products of the claimed generators", "invariant rings",
     check_invariant_rings),
    (6, "unipotent 2x2 invariants are generated by the listed set", "invariant rings", check_unipotent),
    (7, "traces generate the invariants except for L3 and L9", "trace generation", check_trace_generation),
    (8, "zero traces, nilpotency and trivial invariants single out L4, L5, L8, L11", "nilpotency",
     check_nilpotent_equivalence),
    (9, "derivation dimension equals the automorphism parameter count", "dimensions", check_dimensions),
    (10, "the classifier recovers family and parameter after random basis changes", "classification",
     check_classifier),
    (11, "the L7 change of basis identities hold", "L7 basis change", check_l7_witness),
    (12, "right annihilators of L5 and L11 have dimensions 1 and 2", "annihilators", check_annihilators),
]


def run_check(entry, overrides=None) -> CheckResult:
    cid, claim, topic, fn = entry
    t0 = time.perf_counter()
    try:
        ok, details = fn(overrides)
    except Exception as exc:  # a crash is a failed check, reported with its message
        ok, details = False, [f"{type(exc).__name__}: {exc}"]
    return CheckResult(cid, claim, topic, ok, details, time.perf_counter() - t0)


def thread_count() -> int:
    raw = os.environ.get("LEIBNIZ_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_verification_suite(overrides: Mapping[str, StructureTable] | None = None, only=None,
                           threads: int | None = None) -> SuiteReport:
    """Run every check (or the ids in ``only``).  ``overrides`` replaces the
    table of a family, which is how mutation tests are run."""
    entries = [e for e in CHECKS if only is None or e[0] in set(only)]
    threads = thread_count() if threads is None else threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda e: run_check(e, overrides), entries))
    else:
        results = [run_check(e, overrides) for e in entries]
    return SuiteReport(results)
