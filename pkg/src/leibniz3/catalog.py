"""The eleven 3-dimensional non-Lie Leibniz algebras and their recorded data.

The data lives in ``data/catalog.json``.  Products are written like
``"lambda*e1 + e2"``, branch matrices and side conditions as polynomial
strings, and expected values as templates in the copy indices ``r`` and
``s`` (``z_r*z_s`` and so on).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .algebra import StructureTable
from .autgroup import AutFamily, DiagonalFamily
from .exactpoly import LAMBDA, MU, ONE, Poly, Var, parse_poly, parse_rational, substitute
from .traces import TraceWord

CATALOG_FORMAT = "leibniz3-catalog"
CATALOG_VERSION = 1
FAMILY_NAMES = tuple(f"L{k}" for k in range(1, 12))
_SHORT = {"x": 1, "y": 2, "z": 3}
_TEMPLATE_NAME = re.compile(r"^([xyz])_([a-z]|\d+)$")


class CatalogError(ValueError):
    pass


@lru_cache(maxsize=1)
def load_catalog_data() -> dict:
    text = resources.files("leibniz3").joinpath("data/catalog.json").read_text(encoding="utf-8")
    data = json.loads(text)
    if data.get("format") != CATALOG_FORMAT or data.get("version") != CATALOG_VERSION:
        raise CatalogError("unsupported catalog format or version")
    return data


def sample_lambdas() -> list[Fraction]:
    return [parse_rational(q) for q in load_catalog_data()["sample_lambdas"]]


def instantiate(template: str, indices: Mapping[str, int]) -> Poly:
    """Parse a template such as ``"(x_r - y_r)*z_s"`` with ``r``/``s`` bound."""

    def resolve(name: str) -> Poly:
        m = _TEMPLATE_NAME.match(name)
        if m:
            letter, idx = m.groups()
            r = int(idx) if idx.isdigit() else indices[idx]
            return Poly.var(Var.coord(r, _SHORT[letter]))
        return Poly.var(Var.param(name))

    return parse_poly(template, resolve)


def instantiate_word(template: str, indices: Mapping[str, int]) -> TraceWord:
    text = re.sub(r"[a-z]", lambda mt: str(indices[mt.group(0)]), template)
    return TraceWord.parse(text)


def _index_tuples(indices: str, m: int):
    if indices == "r":
        return [{"r": r} for r in range(1, m + 1)]
    pairs = itertools.product(range(1, m + 1), repeat=2)
    if indices == "r<s":
        return [{"r": r, "s": s} for r, s in pairs if r < s]
    if indices == "r<=s":
        return [{"r": r, "s": s} for r, s in pairs if r <= s]
    raise CatalogError(f"unknown index range {indices!r}")


@dataclass
class FamilyRecord:
    name: str
    table: StructureTable
    aut: AutFamily
    diag: DiagonalFamily | None
    generator_templates: list
    expected_traces: dict
    expected_aut_dim: int
    expected_ncl: int | None
    lam: Fraction | None = None
    has_lambda: bool = False
    excluded_lambda: tuple = ()
    expected_annihilator_dim: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if not self.has_lambda:
            return self.name
        if self.lam is None:
            return f"{self.name}^lambda"
        return f"{self.name}^{self.lam}"

    @property
    def nilpotent(self) -> bool:
        return self.expected_ncl is not None

    @property
    def symbolic(self) -> bool:
        return self.has_lambda and self.lam is None

    def _specialize_poly(self, p: Poly) -> Poly:
        if self.lam is None:
            return p
        return substitute(p, {LAMBDA: Poly.const(self.lam)})

    def generators(self, m: int) -> list[Poly]:
        """Claimed generators of the invariant ring on ``m`` copies (with 1)."""
        out = [ONE]
        for g in self.generator_templates:
            for idx in _index_tuples(g["indices"], m):
                out.append(self._specialize_poly(instantiate(g["template"], idx)))
        return out

    def expected_trace_table(self, m: int = 2) -> dict[str, Poly]:
        """Recorded traces for every choice of ``r, s`` in ``1..m``."""
        out = {}
        for word, value in self.expected_traces.items():
            letters = sorted(set(re.findall(r"[a-z]", word)))
            for combo in itertools.product(range(1, m + 1), repeat=len(letters)):
                idx = dict(zip(letters, combo))
                w = instantiate_word(word, idx)
                out[str(w)] = self._specialize_poly(instantiate(value, idx))
        return out

    def admissible_samples(self) -> list[Fraction | None]:
        if not self.has_lambda:
            return [None]
        return [q for q in sample_lambdas() if q not in self.excluded_lambda]


def _build(name: str, rec: dict, lam: Fraction | None) -> FamilyRecord:
    lam_info = rec.get("lambda")
    has_lambda = lam_info is not None
    excluded = tuple(parse_rational(q) for q in lam_info["excluded"]) if has_lambda else ()
    if lam is not None:
        if not has_lambda:
            raise CatalogError(f"{name} has no parameter; do not pass a lambda value")
        if lam in excluded:
            raise CatalogError(f"lambda = {lam} is not admissible for {name} (the algebra is then a Lie algebra)"
                               if lam == 0 and name == "L2" else f"lambda = {lam} is not admissible for {name}")
    constraints = [parse_poly(c) for c in lam_info["constraints"]] if has_lambda else []
    table = StructureTable.from_products(3, rec["products"], constraints, name)
    aut_data = rec["aut"]
    aut_dim = rec["expected_aut_dim"]
    if lam is not None and lam == 0 and "aut_lambda_zero" in rec:
        aut_data = rec["aut_lambda_zero"]
        aut_dim = rec.get("expected_aut_dim_lambda_zero", aut_dim)
    aut = AutFamily.from_json({"name": name, **aut_data})
    if lam is not None:
        table = table.specialize({LAMBDA: lam})
        values = {LAMBDA: lam}
        if lam != 0:
            values[MU] = 1 / lam
        aut = aut.specialize(values)
    diag = DiagonalFamily.from_json(rec["diag"]) if rec.get("diag") else None
    return FamilyRecord(
        name=name,
        table=table,
        aut=aut,
        diag=diag,
        generator_templates=list(rec.get("generators", [])),
        expected_traces=dict(rec["expected_traces"]),
        expected_aut_dim=aut_dim,
        expected_ncl=rec["expected_ncl"],
        lam=lam,
        has_lambda=has_lambda,
        excluded_lambda=excluded,
        expected_annihilator_dim=rec.get("expected_annihilator_dim"),
    )


def normalize_name(name: str) -> str:
    key = name.strip().upper().replace("_", "")
    if key not in FAMILY_NAMES:
        raise CatalogError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    return key


def get_family(name: str, lam=None) -> FamilyRecord:
    """The record for ``name`` (``"L1"`` .. ``"L11"``), specialised at ``lam``
    when given.  ``lam = 0`` selects the separate branches of L4 and L7."""
    key = normalize_name(name)
    if lam is not None and not isinstance(lam, Fraction):
        lam = parse_rational(lam)
    return _build(key, load_catalog_data()["families"][key], lam)


def all_families() -> list[FamilyRecord]:
    return [get_family(n) for n in FAMILY_NAMES]


def family_instances(include_symbolic: bool = False) -> list[FamilyRecord]:
    """Every family at every admissible sample value of lambda (and, for L4
    and L7, also at lambda = 0)."""
    out = []
    for name in FAMILY_NAMES:
        rec = get_family(name)
        if not rec.has_lambda:
            out.append(rec)
            continue
        if include_symbolic:
            out.append(rec)
        lams = rec.admissible_samples()
        if 0 not in rec.excluded_lambda:
            lams = [Fraction(0)] + lams
        out.extend(get_family(name, q) for q in lams)
    return out
