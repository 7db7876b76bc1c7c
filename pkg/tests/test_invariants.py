from __future__ import annotations

import pytest

from leibniz3.autgroup import is_invariant
from leibniz3.catalog import FAMILY_NAMES, get_family
from leibniz3.exactpoly import LAMBDA, ONE, Poly, parse_poly, substitute
from leibniz3.invariants import (check_generation, compositions, invariant_space, pi_substitution, trace_inclusion,
                                 unipotent2_invariants)
from leibniz3.linalg import span_dim
from leibniz3.traces import enumerate_trace_words, trace_direct

RECORDS = [get_family(n) for n in FAMILY_NAMES] + [get_family("L4", 0), get_family("L7", 0)]
IDS = [r.label for r in RECORDS]


def P(t):
    return parse_poly(t)


def same_span(a, b) -> bool:
    return span_dim(a) == span_dim(b) == span_dim(list(a) + list(b))


def space_of(name, m, bound, **kw):
    rec = get_family(name)
    return invariant_space(rec.table, rec.aut, m, bound, diag=rec.diag, **kw)


def test_examples():
    L1 = space_of("L1", 1, 2)
    assert [len(L1.pieces[(k,)]) for k in range(3)] == [1, 1, 1]
    assert same_span(L1.pieces[(1,)], [P("x_1_3")]) and same_span(L1.pieces[(2,)], [P("x_1_3^2")])
    L5 = space_of("L5", 2, 2)
    assert L5.basis() == [ONE]
    L3 = space_of("L3", 2, 2)
    assert same_span(L3.pieces[(1, 1)], [P("x_1_3*x_2_3"), P("x_1_1*x_2_3 - x_1_3*x_2_1")])


def test_generation_examples():
    L6 = space_of("L6", 2, 4)
    gens = [ONE, P("x_1_3^2"), P("x_1_3*x_2_3"), P("x_2_3^2")]
    assert check_generation(gens, L6).ok
    L9 = space_of("L9", 2, 3)
    gens = [ONE, P("x_1_3"), P("x_2_3"), P("(x_1_1 - x_1_2)*x_2_3 - x_1_3*(x_2_1 - x_2_2)")]
    assert check_generation(gens, L9).ok
    assert check_generation([], space_of("L5", 2, 3)).ok
    # dropping a generator is detected
    assert not check_generation([ONE, P("x_1_3")], L9).ok


def test_unipotent_examples():
    space, rep = unipotent2_invariants(2, degrees=[(1, 1)])
    assert same_span(space.pieces[(1, 1)], [P("x_1_2*x_2_2"), P("x_1_1*x_2_2 - x_1_2*x_2_1")])
    space, rep = unipotent2_invariants(1, 2)
    assert same_span(space.basis(), [ONE, P("x_1_2"), P("x_1_2^2")])
    for m in (1, 2, 3):
        assert unipotent2_invariants(m, 3)[1].ok


@pytest.mark.parametrize("rec", RECORDS, ids=IDS)
def test_soundness_and_trace_inclusion(rec):
    space = invariant_space(rec.table, rec.aut, 2, 3, diag=rec.diag)
    for f in space.basis():
        assert is_invariant(f, rec.aut, 2)
    values = [trace_direct(rec.table, w, 2).value for w in enumerate_trace_words(3, 2, nested=True)]
    assert trace_inclusion(space, values) == []


@pytest.mark.parametrize("rec", RECORDS, ids=IDS)
def test_pruned_matches_unpruned(rec):
    if rec.diag is None:
        pytest.skip("no diagonal family")
    a = invariant_space(rec.table, rec.aut, 2, 3, diag=rec.diag)
    b = invariant_space(rec.table, rec.aut, 2, 3, generic=False)
    for d in a.pieces:
        assert same_span(a.pieces[d], b.pieces[d]), d


@pytest.mark.parametrize("name", ["L3", "L9"])
def test_copy_identification_preserves_invariance(name):
    rec = get_family(name)
    for t in (2, 3):
        space = invariant_space(rec.table, rec.aut, t, degrees=[(1,) * t], diag=rec.diag)
        for f in space.basis():
            for k in range(1, t + 1):
                for part in compositions(t, k):
                    g = pi_substitution(f, part)
                    assert is_invariant(g, rec.aut, k), (f, part)


def test_pi_substitution_example():
    f = P("x_1_1*x_2_3 - x_1_3*x_2_1 + x_3_2")
    assert pi_substitution(f, (2, 1)) == P("x_2_2")
    assert pi_substitution(f, (1, 2)) == P("x_1_1*x_2_3 - x_1_3*x_2_1 + x_2_2")


@pytest.mark.parametrize("name", ["L2", "L7"])
def test_symbolic_lambda_matches_samples(name):
    sym = get_family(name)
    gen = invariant_space(sym.table, sym.aut, 2, 3, diag=sym.diag)
    for q in sym.admissible_samples()[:3]:
        rec = get_family(name, q)
        sp = invariant_space(rec.table, rec.aut, 2, 3, diag=rec.diag)
        for d, basis in gen.pieces.items():
            spec = [substitute(p, {LAMBDA: Poly.const(q)}) for p in basis]
            assert len(sp.pieces[d]) == len(basis)
            assert same_span(spec, sp.pieces[d]), (q, d)


def test_input_validation():
    rec = get_family("L1")
    with pytest.raises(ValueError):
        invariant_space(rec.table, rec.aut, 2, None)
    with pytest.raises(ValueError):
        invariant_space(rec.table, rec.aut, 2, degrees=[(1,)])
    with pytest.raises(ValueError):
        invariant_space(rec.table, [], 1, 2)
