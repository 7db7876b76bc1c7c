"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from leibniz3.exactpoly import Poly, Var

# five variables: three coordinates and two parameters
VARS = [Var.coord(1, 1), Var.coord(1, 3), Var.coord(2, 2), Var.param("lambda"), Var.param("alpha1")]

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def monomials(draw, max_degree: int = 4):
    deg = draw(st.integers(0, max_degree))
    exps: dict = {}
    for _ in range(deg):
        v = draw(st.sampled_from(VARS))
        exps[v] = exps.get(v, 0) + 1
    return exps


@st.composite
def polys(draw, max_terms: int = 4, max_degree: int = 4):
    acc = Poly()
    for _ in range(draw(st.integers(0, max_terms))):
        acc = acc + Poly.monomial(draw(monomials(max_degree)), draw(rationals))
    return acc


points = st.fixed_dictionaries({v: rationals for v in VARS})
