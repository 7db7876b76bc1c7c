from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz3.autgroup import (AutFamily, Branch, DeterminantError, act, compose, diagonal_monomial_filter,
                               diagonal_variable_elimination, identity_branch, is_invariant, rename_parameters,
                               verify_aut_family)
from leibniz3.catalog import FAMILY_NAMES, get_family
from leibniz3.exactpoly import ONE, Var, parse_poly
from strategies import polys

RECORDS = [get_family(n) for n in FAMILY_NAMES] + [get_family("L4", 0), get_family("L7", 0)]
IDS = [r.label for r in RECORDS]


def P(t):
    return parse_poly(t)


def coords(r):
    return [Var.coord(r, i) for i in (1, 2, 3)]


@pytest.mark.parametrize("rec", RECORDS, ids=IDS)
def test_branches_are_automorphisms(rec):
    for g in rec.aut.branches:
        assert verify_aut_family(rec.table, g).ok, g.name
    if rec.diag is not None:
        for g in rec.diag.branches():
            assert verify_aut_family(rec.table, g).ok, g.name


def test_wrong_family_is_rejected():
    res = verify_aut_family(get_family("L1").table, get_family("L2").aut)
    assert not res.ok
    name, i, j, residual = res.witness
    assert any(not c.is_zero for c in residual)


@pytest.mark.parametrize("rec", RECORDS, ids=IDS)
def test_products_of_branches_are_automorphisms(rec):
    for g in rec.aut.branches:
        for h in rec.aut.branches:
            gh = compose(g, rename_parameters(h, "_b"))
            assert verify_aut_family(rec.table, gh).ok, gh.name


def _specialised(g: Branch, seed: int) -> Branch:
    import random
    rng = random.Random(seed)
    vals = {Var(p): Fraction(rng.randint(1, 7), rng.randint(1, 3)) for p in g.params}
    vals.setdefault(Var.param("lambda"), Fraction(3))
    vals[Var.param("mu")] = 1 / vals[Var.param("lambda")]
    return g.specialize(vals)


@given(st.sampled_from([g for r in RECORDS for g in r.aut.branches]),
       st.sampled_from([g for r in RECORDS for g in r.aut.branches]), polys(3, 3), st.integers(0, 99))
def test_action_respects_composition(g, h, f, seed):
    gs, hs = _specialised(g, seed), _specialised(h, seed + 1)
    assert act(compose(gs, hs), f, 2) == act(hs, act(gs, f, 2), 2)


def test_action_examples():
    L3 = get_family("L3").aut.branches[0]
    assert act(L3, P("x_1_3")) == P("x_1_3")
    L9 = get_family("L9").aut.branches[0]
    assert act(L9, P("x_1_1 - x_1_2")) == P("x_1_1 - x_1_2 + (alpha3 - alpha6)*x_1_3")
    f = P("x_1_1*x_2_3 + lambda*x_1_2")
    assert act(identity_branch(3), f) == f


def test_l6_second_branch_negates_z():
    g2 = get_family("L6").aut.branches[1]
    assert act(g2, P("x_1_3")) == P("-x_1_3")
    assert act(g2, P("x_1_3*x_2_3")) == P("x_1_3*x_2_3")
    assert not is_invariant(P("x_1_3"), get_family("L6").aut)
    assert is_invariant(P("x_1_3*x_2_3"), get_family("L6").aut)


def test_diagonal_elimination():
    assert diagonal_variable_elimination(get_family("L8").diag, 2) == set(coords(1) + coords(2))
    assert diagonal_variable_elimination(get_family("L1").diag, 1) == set(coords(1)[:2])
    trivial = get_family("L1").diag.__class__([{}, {}, {}], [], "id")
    assert diagonal_variable_elimination(trivial, 2) == set()


def test_diagonal_filter():
    L6 = get_family("L6").diag
    assert diagonal_monomial_filter(L6, P("x_1_3*x_2_3"))
    assert diagonal_monomial_filter(L6, P("x_1_3"))
    assert diagonal_monomial_filter(L6, ONE)
    assert not diagonal_monomial_filter(get_family("L5").diag, P("x_1_2*x_1_3"))
    # the sign branch of L5 rejects an odd power of the third coordinate alone
    assert not diagonal_monomial_filter(get_family("L5").diag, [0, 0, 1])


def test_singular_family_is_rejected():
    bad = Branch([[P("alpha1"), P("alpha1")], [P("alpha1"), P("alpha1")]], ["alpha1"], [P("alpha1")], "bad")
    with pytest.raises(DeterminantError):
        AutFamily([bad], "bad")


@pytest.mark.parametrize("rec", RECORDS, ids=IDS)
def test_json_round_trip(rec):
    F = AutFamily.from_json(rec.aut.to_json())
    assert F.parameter_count == rec.aut.parameter_count
    for a, b in zip(F.branches, rec.aut.branches):
        assert verify_aut_family(rec.table, a).ok
        assert a.params == b.params
