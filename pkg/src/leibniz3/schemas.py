"""JSON schemas for the CLI reports and the structure-table input format."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema
from referencing import Registry, Resource

REPORT_KINDS = ("verify", "classify", "traces", "invariants", "aut", "info")
SCHEMA_FILES = ["common", "structure-table"] + [f"{k}-report" for k in REPORT_KINDS]


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    path = resources.files("leibniz3").joinpath(f"schemas/{name}.schema.json")
    return json.loads(path.read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def _registry() -> Registry:
    pairs = []
    for name in SCHEMA_FILES:
        res = Resource.from_contents(load_schema(name))
        pairs.append((f"{name}.schema.json", res))
        pairs.append((load_schema(name)["$id"], res))
    return Registry().with_resources(pairs)


def validator(name: str) -> jsonschema.protocols.Validator:
    schema = load_schema(name)
    cls = jsonschema.validators.validator_for(schema)
    return cls(schema, registry=_registry())


def schema_for(data) -> str:
    """The schema name for a report, chosen by its ``report`` field; objects
    without one are taken to be structure tables."""
    if isinstance(data, dict) and "report" in data:
        kind = data["report"]
        if kind not in REPORT_KINDS:
            raise ValueError(f"unknown report kind {kind!r}")
        return f"{kind}-report"
    return "structure-table"


def validation_errors(data, name: str | None = None) -> list[str]:
    name = name or schema_for(data)
    errs = sorted(validator(name).iter_errors(data), key=lambda e: list(e.absolute_path))
    return [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}" for e in errs]
