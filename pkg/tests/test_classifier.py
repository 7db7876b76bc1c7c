from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz3.algebra import StructureTable
from leibniz3.catalog import family_instances, get_family
from leibniz3.classifier import (DECISION_TABLE, EXIT_CLASSIFIED, EXIT_LIE, EXIT_NOT_LEIBNIZ, ClassifyError,
                                 classify, conjugate, l4_parameter)
from leibniz3.traces import TraceWord, trace_direct

INSTANCES = family_instances()


def test_examples():
    T, _ = conjugate(get_family("L2", 3).table, seed=11)
    rep = classify(T)
    assert (rep.family, rep.recovered_lambda) == ("L2", 3)
    rep = classify(get_family("L8").table)
    assert rep.nilpotent and rep.ncl == 4 and rep.family == "L8"
    rep = classify(get_family("L1").table)
    assert rep.family == "L1" and rep.evidence["derivation_dim"] == 2 and any(rep.evidence["trL"])
    T, _ = conjugate(get_family("L7", 2).table, seed=5)
    rep = classify(T)
    assert (rep.family, rep.recovered_lambda) == ("L7", 2)
    assert rep.evidence["trRR_over_trR_squared"] == 5
    assert rep.exit_code == EXIT_CLASSIFIED


def test_out_of_scope_inputs():
    heis = StructureTable.from_products(3, {"e1e2": "e3", "e2e1": "-e3"})
    rep = classify(heis)
    assert rep.lie and rep.exit_code == EXIT_LIE
    bad = StructureTable.from_products(3, {"e1e1": "e1"})
    rep = classify(bad)
    assert not rep.leibniz and rep.exit_code == EXIT_NOT_LEIBNIZ
    with pytest.raises(ClassifyError):
        classify(StructureTable.from_products(2, {"e1e1": "e2"}))
    with pytest.raises(ClassifyError):
        classify(get_family("L2").table)


@given(st.sampled_from(INSTANCES), st.integers(0, 10 ** 6))
def test_basis_independence(rec, seed):
    T, _ = conjugate(rec.table, seed=seed)
    rep = classify(T)
    assert rep.family == rec.name
    assert rep.recovered_lambda == rec.lam


@pytest.mark.parametrize("rec", INSTANCES, ids=lambda r: r.label)
def test_recovered_parameter_reproduces_traces(rec):
    T, _ = conjugate(rec.table, seed=1)
    rep = classify(T)
    again = get_family(rep.family, rep.recovered_lambda)
    assert classify(again.table).label == rep.label
    # the basis-free quantities agree between the input and the re-instantiated record
    for key in ("derivation_dim", "leib_dim", "ncl", "trR_over_trL", "trRR_over_trR_squared"):
        assert classify(again.table).evidence.get(key) == rep.evidence.get(key)


def _signature(T):
    tl = trace_direct(T, TraceWord.parse("L1"), 1).value
    tr = trace_direct(T, TraceWord.parse("R1"), 1).value
    q = trace_direct(T, TraceWord.parse("R1.R1"), 1).value
    rep = classify(T)
    c = None if tl.is_zero else rep.evidence.get("trR_over_trL")
    k = None if tr.is_zero else rep.evidence.get("trRR_over_trR_squared")
    return (tl.is_zero, rep.evidence["derivation_dim"], c, k, q.is_zero)


def test_pairwise_distinguishable():
    recs = [r for r in INSTANCES if not r.nilpotent]
    sigs = {r.label: _signature(r.table) for r in recs}
    for a, b in itertools.combinations(recs, 2):
        assert sigs[a.label] != sigs[b.label], (a.label, b.label)


@pytest.mark.parametrize("lam", [Fraction(0), Fraction(1), Fraction(-2), Fraction(5, 7), Fraction(1, 4)])
def test_l4_parameter_is_a_congruence_invariant(lam):
    rng = random.Random(7)
    T = get_family("L4", lam).table
    for _ in range(5):
        U, _ = conjugate(T, rng=rng)
        assert l4_parameter(U) == lam


def test_decision_table_is_documented():
    assert "L9" in DECISION_TABLE and "L7 with lambda = (k - 1)/2" in DECISION_TABLE
