from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibniz3.algebra import (StructureTable, check_leibniz, derivation_dim, generic_element, leib_ideal,
                              mul, mult_matrices, nilpotency, right_annihilator)
from leibniz3.catalog import FAMILY_NAMES, family_instances, get_family
from leibniz3.exactpoly import ZERO, Poly, Var, parse_poly
import oracles

INSTANCES = family_instances(include_symbolic=False)
IDS = [r.label for r in INSTANCES]


def e(T, i):
    return T.basis(i)


def test_catalog_products():
    L1, L6 = get_family("L1").table, get_family("L6").table
    assert L1.product(2, 2) == (Poly.const(1), ZERO, ZERO)
    assert L6.product(1, 3) == (ZERO, Poly.const(1), ZERO)
    assert all(c.is_zero for c in mul(L1, (ZERO,) * 3, generic_element(1, 3)))


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_symbolic_families_are_leibniz(name):
    assert check_leibniz(get_family(name).table).ok


def test_leibniz_counterexample():
    T = StructureTable.from_products(1, {"e1e1": "e1"})
    res = check_leibniz(T)
    assert not res.ok
    assert res.witness == (1, 1, 1)
    assert res.residual == (Poly.const(-1),)
    assert check_leibniz(StructureTable.zero(3)).ok


def test_generic_product_matches_operator_matrices():
    ent = [[[Poly.var(Var.param(f"s{i}{j}{l}")) for l in range(3)] for j in range(3)] for i in range(3)]
    T = StructureTable(3, ent)
    a, b = generic_element(1, 3), generic_element(2, 3)
    ab = mul(T, a, b)
    for l in range(3):
        left = sum((a[i] * sum((mult_matrices(T, i + 1)[0][l][j] * b[j] for j in range(3)), ZERO)
                    for i in range(3)), ZERO)
        right = sum((b[i] * sum((mult_matrices(T, i + 1)[1][l][j] * a[j] for j in range(3)), ZERO)
                     for i in range(3)), ZERO)
        assert ab[l] == left == right


small_tables = st.lists(st.integers(-1, 1), min_size=8, max_size=8).map(
    lambda xs: StructureTable(2, [[[Poly.const(xs[4 * i + 2 * j + l]) for l in range(2)] for j in range(2)]
                                  for i in range(2)]))


@given(small_tables)
def test_leib_ideal_zero_iff_antisymmetric(T):
    n = T.dim
    anti = all(T.const(i, i, l).is_zero for i in range(1, n + 1) for l in range(1, n + 1)) and all(
        T.const(i, j, l) == -T.const(j, i, l) for i in range(1, n + 1) for j in range(1, n + 1)
        for l in range(1, n + 1))
    assert (leib_ideal(T).dim == 0) == anti
    assert leib_ideal(T).dim == oracles.leib_dim(oracles.consts(T))


def test_leib_ideal_examples():
    assert leib_ideal(get_family("L11").table).dim == 1
    assert leib_ideal(StructureTable.zero(3)).dim == 0
    # squares give e1 (from e2e2) and polarizations give e1 again, so the span is e1 only
    L1 = get_family("L1").table
    assert leib_ideal(L1).dim == 1
    assert oracles.leib_dim(oracles.consts(L1)) == 1


@pytest.mark.parametrize("rec", INSTANCES, ids=IDS)
def test_structure_against_oracles(rec):
    T = rec.table
    C = oracles.consts(T)
    assert leib_ideal(T).dim == oracles.leib_dim(C)
    assert right_annihilator(T).dim == oracles.right_annihilator_dim(C)
    assert derivation_dim(T) == oracles.derivation_dim(C)
    assert nilpotency(T).ncl == oracles.nilpotency_class(C)


@pytest.mark.parametrize("rec", INSTANCES, ids=IDS)
def test_right_annihilator_closure(rec):
    T = rec.table
    for a in right_annihilator(T).basis:
        for i in range(1, 4):
            assert all(c.is_zero for c in mul(T, e(T, i), a))


def test_annihilator_examples():
    assert right_annihilator(get_family("L5").table).dim == 1
    assert right_annihilator(get_family("L11").table).dim == 2
    assert right_annihilator(StructureTable.zero(3)).dim == 3


def test_nilpotency_examples():
    assert nilpotency(get_family("L8").table).ncl == 4
    for name in ("L4", "L5", "L11"):
        assert nilpotency(get_family(name).table).ncl == 3
    for name in ("L1", "L2", "L3", "L6", "L7", "L9", "L10"):
        res = nilpotency(get_family(name).table)
        assert res.ncl is None and res.value == float("inf") and res.warning is None


def test_nilpotency_cap_warning():
    res = nilpotency(get_family("L8").table, cap=2)
    assert res.ncl is None
    assert res.warning is not None


def test_derivation_examples():
    assert derivation_dim(get_family("L1").table) == 2
    assert derivation_dim(get_family("L11").table) == 5
    assert derivation_dim(get_family("L10").table) == 4


invertible = st.lists(st.integers(-3, 3), min_size=9, max_size=9).map(
    lambda xs: [[Fraction(xs[3 * i + j]) for j in range(3)] for i in range(3)]).filter(
    lambda P: oracles.rank(P) == 3)


@given(st.sampled_from(INSTANCES), invertible)
def test_change_of_basis_preserves_invariants(rec, P):
    T = rec.table
    U = T.change_basis(P)
    assert check_leibniz(U).ok
    assert derivation_dim(U) == derivation_dim(T)
    assert nilpotency(U).ncl == nilpotency(T).ncl
    assert leib_ideal(U).dim == leib_ideal(T).dim


def test_json_round_trip_and_specialize():
    T = get_family("L2").table
    U = StructureTable.from_json(T.to_json())
    assert U.entries == T.entries and U.constraints == T.constraints
    with pytest.raises(ValueError):
        T.specialize({Var.param("lambda"): 0})
    assert T.specialize({Var.param("lambda"): 3}).is_rational


def test_table_rejects_coordinates():
    with pytest.raises(ValueError):
        StructureTable.from_products(2, {"e1e1": [parse_poly("x_1_1"), ZERO]})
