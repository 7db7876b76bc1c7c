"""Exact computations with the 3-dimensional non-Lie Leibniz algebras.

Polynomials with rational coefficients, structure tables, operator traces,
automorphism branches, invariant spaces, the catalog of the eleven families
and a classifier for user-supplied tables.
"""

from __future__ import annotations

from .kernels import BACKEND
from .exactpoly import Poly, Var, format_poly, parse_poly
from .algebra import StructureTable, check_leibniz, derivation_dim, nilpotency, right_annihilator
from .traces import TraceWord, trace_closed_form, trace_direct
from .autgroup import AutFamily, Branch, verify_aut_family
from .catalog import FAMILY_NAMES, get_family
from .invariants import check_generation, invariant_space
from .classifier import classify
from .verify import run_verification_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Poly", "Var", "format_poly", "parse_poly", "StructureTable", "check_leibniz", "derivation_dim",
    "nilpotency", "right_annihilator", "TraceWord", "trace_closed_form", "trace_direct", "AutFamily", "Branch",
    "verify_aut_family", "FAMILY_NAMES", "get_family", "check_generation", "invariant_space", "classify",
    "run_verification_suite", "__version__",
]
