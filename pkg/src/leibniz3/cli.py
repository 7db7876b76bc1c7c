"""Command-line front end: ``leibniz3 <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import kernels
from .algebra import (StructureTable, check_leibniz, commutator_span, derivation_dim, leib_ideal, nilpotency,
                      right_annihilator)
from .autgroup import verify_aut_family
from .catalog import CatalogError, FamilyRecord, get_family
from .classifier import DECISION_TABLE, ClassifyError, classify, conjugate
from .exactpoly import Poly, format_poly, format_rational, parse_rational
from .invariants import check_generation, invariant_space
from .schemas import validation_errors
from .traces import TraceWord, multidegrees_up_to, trace_direct, trace_subalgebra_span
from .verify import run_verification_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_IO = 74

DOT = "·"

WORD_GRAMMAR = """\
trace words:
  word   := "1" | factor ("." factor)*
  factor := ("L" | "R") arg
  arg    := copy index (1, 2, ...) | "(" arg "*" arg ")"
  R_a is right multiplication by a, L_a left multiplication; the word is the
  composite operator, rightmost factor applied first, and its trace is
  taken.  Examples: "R1.R2" is tr((chi_0 chi_2) chi_1), "L(1*2)" is
  tr((chi_1 chi_2) chi_0), "1" is the dimension."""

TOP_EPILOG = WORD_GRAMMAR + "\n\nclassification of non-nilpotent input:\n" + DECISION_TABLE + """

exit codes: 0 success or classified, 1 a check failed, 2 not Leibniz,
3 Lie algebra, 4 unrecognized, 64 usage error, 65 malformed input,
74 I/O error.  LEIBNIZ_THREADS sets the number of worker threads for verify."""


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leibniz3", description="Exact computations with the 3-dimensional non-Lie Leibniz algebras.",
                epilog=TOP_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, epilog=None):
        sp = sub.add_parser(name, help=help_text, description=help_text, epilog=epilog,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        return sp

    sp = add("verify", "re-derive every recorded claim and print the suite report")
    sp.add_argument("--only", type=int, nargs="+", metavar="ID", help="run only these check ids")
    sp.add_argument("--threads", type=_positive, help="worker threads (default: LEIBNIZ_THREADS or 1)")

    sp = add("classify", "classify the algebra given by a structure-table JSON file ('-' reads stdin)",
             epilog=DECISION_TABLE)
    sp.add_argument("path")
    sp.add_argument("--seed", type=int, help="first rewrite the table in a random basis drawn with this seed")

    sp = add("traces", "operator traces of a catalog family", epilog=WORD_GRAMMAR)
    sp.add_argument("family")
    sp.add_argument("--word", help="a single trace word (default: the recorded table)")
    sp.add_argument("--lambda", dest="lam", type=_rational, metavar="P/Q")
    sp.add_argument("--m", type=_positive, default=None, help="number of generic copies")

    sp = add("invariants", "the invariant space of a family up to a degree bound")
    sp.add_argument("family")
    sp.add_argument("--m", type=_positive, default=1)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--lambda", dest="lam", type=_rational, metavar="P/Q")
    sp.add_argument("--check-api", action="store_true", help="compare with the span of traces")
    sp.add_argument("--no-prune", action="store_true", help="do not discard monomials by diagonal weights")

    sp = add("aut", "automorphism branches of a family and their verification")
    sp.add_argument("family")
    sp.add_argument("--lambda", dest="lam", type=_rational, metavar="P/Q")

    sp = add("info", "structural data of a family")
    sp.add_argument("family")
    sp.add_argument("--lambda", dest="lam", type=_rational, metavar="P/Q")

    sp = sub.add_parser("validate", help="check a JSON report or structure table against its schema",
                        description="check a JSON report or structure table against its schema")
    sp.add_argument("path", nargs="?", default="-")
    return p


def _version() -> str:
    from . import __version__
    return __version__


# ---------------------------------------------------------------------------
# helpers


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON ({exc})") from exc


def _poly(p: Poly) -> str:
    return format_poly(p, shorthand=True, times=DOT)


def _lam_json(lam) -> str | None:
    return None if lam is None else format_rational(lam)


def format_element(vec, n: int) -> str:
    parts = []
    for l, c in enumerate(vec, 1):
        if c.is_zero:
            continue
        if c == Poly.const(1):
            parts.append(f"e{l}")
        elif c == Poly.const(-1):
            parts.append(f"-e{l}")
        else:
            text = format_poly(c)
            if len(c) > 1:
                text = f"({text})"
            parts.append(f"{text}*e{l}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def products_of(T: StructureTable) -> dict[str, str]:
    n = T.dim
    return {f"e{i}e{j}": format_element(T.product(i, j), n) for i in range(1, n + 1) for j in range(1, n + 1)
            if any(not c.is_zero for c in T.product(i, j))}


def _family(name: str, lam) -> FamilyRecord:
    try:
        return get_family(name, lam)
    except CatalogError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    rep = run_verification_suite(only=args.only, threads=args.threads)
    data = {"report": "verify", "backend": kernels.BACKEND, **rep.to_json()}
    _emit(args, data, rep.text())
    return EXIT_OK if rep.ok else EXIT_FAILED


def cmd_classify(args) -> int:
    data = _read_json(args.path)
    errs = validation_errors(data, "structure-table")
    if errs:
        raise DataError("structure table does not match the schema: " + "; ".join(errs[:5]))
    try:
        T = StructureTable.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"bad structure table: {exc}") from exc
    P = None
    if args.seed is not None:
        T, P = conjugate(T, seed=args.seed)
    try:
        rep = classify(T)
    except ClassifyError as exc:
        out = {"report": "classify", "leibniz": False, "lie": False, "nilpotent": None, "ncl": None,
               "family": "unrecognized", "recovered_lambda": None, "evidence": {}, "notes": [str(exc)],
               "exit_code": 4}
        _emit(args, out, f"unrecognized: {exc}")
        return 4
    out = {"report": "classify", **rep.to_json()}
    if P is not None:
        out["basis_change"] = [[format_rational(x) for x in row] for row in P]
    lines = [f"family: {rep.label}", f"leibniz: {rep.leibniz}", f"lie: {rep.lie}"]
    if rep.nilpotent is not None:
        lines.append(f"nilpotent: {rep.nilpotent} (ncl {'inf' if rep.ncl is None else rep.ncl})")
    for k, v in out["evidence"].items():
        lines.append(f"  {k}: {v}")
    lines += [f"note: {n}" for n in rep.notes]
    _emit(args, out, "\n".join(lines))
    return rep.exit_code


def cmd_traces(args) -> int:
    rec = _family(args.family, args.lam)
    rows = []
    if args.word:
        try:
            w = TraceWord.parse(args.word)
        except ValueError as exc:
            raise UsageError(f"bad trace word {args.word!r}: {exc}") from exc
        m = args.m or max(w.max_copy, 1)
        if w.max_copy > m:
            raise UsageError(f"word {w} uses copy {w.max_copy} but --m is {m}")
        rows.append((w, trace_direct(rec.table, w, m).value, None))
        text = _poly(rows[0][1])
    else:
        m = args.m or 2
        for word, expected in rec.expected_trace_table(m).items():
            w = TraceWord.parse(word)
            rows.append((w, trace_direct(rec.table, w, m).value, expected))
        width = max(len(w.expression()) for w, _, _ in rows)
        text = "\n".join(f"tr{w.expression():<{width}}  =  {_poly(v)}" + ("" if v == e else "   MISMATCH")
                         for w, v, e in rows)
    data = {"report": "traces", "family": rec.name, "lambda": _lam_json(rec.lam), "m": m,
            "traces": [{"word": str(w), "expression": f"tr{w.expression()}", "value": _poly(v),
                        "expected": None if e is None else _poly(e),
                        "matches": None if e is None else v == e} for w, v, e in rows]}
    _emit(args, data, text)
    return EXIT_OK if all(e is None or v == e for _, v, e in rows) else EXIT_FAILED


def cmd_invariants(args) -> int:
    if args.bound < 0:
        raise UsageError("--bound must be nonnegative")
    rec = _family(args.family, args.lam)
    space = invariant_space(rec.table, rec.aut, args.m, args.bound, diag=None if args.no_prune else rec.diag,
                            name=rec.label)
    gen = check_generation(rec.generators(args.m), space, rec.table.constraints)
    data = {"report": "invariants", "family": rec.name, "lambda": _lam_json(rec.lam),
            "space": space.to_json(), "generation": gen.to_json()}
    lines = [f"{rec.label}: invariants on {args.m} cop{'y' if args.m == 1 else 'ies'}, total degree <= {args.bound}"]
    for d, basis in space.pieces.items():
        lines.append(f"  {d}: dim {len(basis)}" + (": " + ", ".join(_poly(p) for p in basis) if basis else ""))
    lines.append(f"generated by the recorded generators: {'yes' if gen.ok else 'NO'}")
    ok = gen.ok
    if args.check_api:
        span = trace_subalgebra_span(rec.table, args.bound, args.m)
        comp = []
        for d in multidegrees_up_to(args.m, args.bound):
            a, b = space.dim(d), len(span[d])
            comp.append({"multidegree": list(d), "invariant_dim": a, "trace_dim": b, "equal": a == b})
        data["trace_comparison"] = comp
        bad = [c for c in comp if not c["equal"]]
        lines.append("traces span the invariants: " + ("yes" if not bad else "no, at " + ", ".join(
            f"{tuple(c['multidegree'])} ({c['trace_dim']} of {c['invariant_dim']})" for c in bad)))
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_aut(args) -> int:
    rec = _family(args.family, args.lam)
    branches = []
    lines = [f"{rec.label}: {len(rec.aut.branches)} branch(es), {rec.aut.parameter_count} parameters"]
    ok = True
    for b in rec.aut.branches:
        res = verify_aut_family(rec.table, b)
        ok &= res.ok
        entry = b.to_json()
        entry["verified"] = res.ok
        branches.append(entry)
        lines.append(f"branch {b.name} ({'verified' if res.ok else 'FAILED'}):")
        width = max(len(x) for row in entry["matrix"] for x in row)
        lines += ["  [ " + "  ".join(f"{x:>{width}}" for x in row) + " ]" for row in entry["matrix"]]
        lines.append(f"  parameters: {', '.join(b.params) or 'none'}")
        if entry["nonvanishing"]:
            lines.append(f"  nonzero: {', '.join(entry['nonvanishing'])}")
    d = derivation_dim(rec.table)
    lines.append(f"derivation algebra dimension: {d}")
    data = {"report": "aut", "family": rec.name, "lambda": _lam_json(rec.lam), "ok": ok,
            "parameter_count": rec.aut.parameter_count, "derivation_dim": d, "branches": branches,
            "diagonal": rec.diag.to_json() if rec.diag else None}
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_info(args) -> int:
    rec = _family(args.family, args.lam)
    T = rec.table
    nil = nilpotency(T)
    data = {"report": "info", "family": rec.name, "lambda": _lam_json(rec.lam), "products": products_of(T),
            "constraints": [format_poly(c) for c in T.constraints], "leibniz": check_leibniz(T).ok,
            "leib_dim": leib_ideal(T).dim, "annihilator_dim": right_annihilator(T).dim,
            "commutator_dim": commutator_span(T).dim, "ncl": "inf" if nil.ncl is None else nil.ncl,
            "chain_dims": list(nil.chain_dims), "aut_dim": derivation_dim(T)}
    lines = [rec.label]
    lines += [f"  {k} = {v}" for k, v in data["products"].items()]
    if data["constraints"]:
        lines.append("  nonzero: " + ", ".join(data["constraints"]))
    lines += [f"Leib = {data['leib_dim']}", f"Ann^R = {data['annihilator_dim']}", f"ncl = {data['ncl']}",
              f"dim Aut = {data['aut_dim']}"]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_validate(args) -> int:
    data = _read_json(args.path)
    try:
        errs = validation_errors(data)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    if errs:
        print("\n".join(errs), file=sys.stderr)
        return EXIT_DATA
    print("valid")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "classify": cmd_classify, "traces": cmd_traces, "invariants": cmd_invariants,
            "aut": cmd_aut, "info": cmd_info, "validate": cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"leibniz3: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"leibniz3: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"leibniz3: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
