"""Command-line entry point.

Exit codes: 0 when the check succeeds or the formula holds, 1 when a check
fails (rejected proof, model violation, false formula, counterexample) and 2
for usage, parse and resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .axioms import ConstantSpecification, LogicConfig, parse_cs
from .evidence import (
    aggregated_evidence,
    parse_assignment,
    parse_database,
    parse_space,
    probability_lower_bound,
    supporting_subsets,
)
from .models import eval_truth, load_model, validate_model
from .proofs import builtin_j_derivation, check_derivation, format_derivation, parse_derivation
from .soundness import fuzz_soundness
from .syntax import (
    Dialect,
    ParseError,
    forget_translation,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
)
from .truthtable import ResourceLimitError

OK, FAILED, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _config(args) -> LogicConfig:
    pe = None
    if getattr(args, "no_pe", False):
        pe = False
    return LogicConfig.parse(args.logic, args.beta or "", pe)


def _cs(args, config: LogicConfig) -> ConstantSpecification:
    if args.cs == "total":
        return ConstantSpecification.total()
    if args.cs == "empty":
        return ConstantSpecification.empty()
    return parse_cs(_read(args.cs), config)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


# ------------------------------------------------------------------ commands


def cmd_parse(args) -> int:
    dialect = Dialect.from_name(args.logic)
    texts = args.text or [line for line in sys.stdin.read().splitlines() if line.strip()]
    results = []
    for text in texts:
        if args.kind == "term":
            kind, out = "term", print_term(parse_term(text, dialect))
        elif args.kind == "formula":
            kind, out = "formula", print_formula(parse_formula(text, dialect))
        else:
            try:
                kind, out = "formula", print_formula(parse_formula(text, dialect))
            except ParseError:
                kind, out = "term", print_term(parse_term(text, dialect))
        results.append({"input": text, "kind": kind, "canonical": out})
    _emit(args, {"results": results}, [r["canonical"] for r in results])
    return OK


def cmd_check_proof(args) -> int:
    config = _config(args)
    cs = _cs(args, config)
    d = parse_derivation(_read(args.file), config.dialect)
    verdict = check_derivation(d, config, cs, args.max_atoms)
    first = verdict.first_failure
    payload = {
        "accepted": verdict.accepted,
        "steps": len(d),
        "logic": config.describe(),
        "first_failure": None if first is None else {"step": first.index + 1, "reason": first.reason},
        "failures": [{"step": r.index + 1, "reason": r.reason} for r in verdict.failures],
        "resource_error": verdict.resource_error,
    }
    if verdict.accepted:
        lines = [f"accepted: {len(d)} steps under {config.describe()}"]
    elif first is None:
        lines = ["rejected: empty derivation"]
    else:
        lines = [f"rejected: step {first.index + 1}: {first.reason}"]
        lines += [f"  step {r.index + 1}: {r.reason}" for r in verdict.failures[1:]]
    _emit(args, payload, lines)
    if verdict.resource_error:
        return ERROR
    return OK if verdict.accepted else FAILED


def cmd_check_model(args) -> int:
    m = load_model(_read(args.file))
    viols = validate_model(m)
    payload = {
        "valid": not viols,
        "logic": m.config.describe(),
        "worlds": len(m.worlds),
        "universe": len(m.universe),
        "violations": [v.to_dict() for v in viols],
    }
    lines = [str(v) for v in viols] or [
        f"valid: {len(m.worlds)} worlds, {len(m.universe)} formulas, {len(m.universe.terms)} terms "
        f"under {m.config.describe()}"
    ]
    _emit(args, payload, lines)
    return OK if not viols else FAILED


def cmd_eval(args) -> int:
    m = load_model(_read(args.file))
    f = parse_formula(args.formula, m.config.dialect)
    value = eval_truth(m, args.world, f)
    _emit(args, {"world": args.world, "formula": print_formula(f), "value": int(value)}, [str(int(value))])
    return OK if value else FAILED


def cmd_derive_j(args) -> int:
    s = parse_term(args.s, Dialect.STAR)
    t = parse_term(args.t, Dialect.STAR)
    a = parse_formula(args.a, Dialect.STAR)
    b = parse_formula(args.b, Dialect.STAR)
    d = builtin_j_derivation(s, t, a, b)
    text = format_derivation(d)
    if args.json:
        print(json.dumps({"derivation": text.splitlines(), "labels": d.labels()}, indent=2, ensure_ascii=False))
    else:
        sys.stdout.write(text)
    return OK


def cmd_translate(args) -> int:
    dialect = Dialect.from_name(args.logic)
    f = parse_formula(args.formula, dialect)
    out = print_formula(forget_translation(f))
    _emit(args, {"formula": print_formula(f), "translation": out}, [out])
    return OK


def cmd_aggregate(args) -> int:
    db = parse_database(_read(args.db))
    ae = aggregated_evidence(db)
    subsets = supporting_subsets(db)
    text = print_term(ae, "u")
    _emit(args, {"aggregated_evidence": text, "supporting_subsets": [list(s) for s in subsets]}, [text])
    return OK


def cmd_bound(args) -> int:
    db = parse_database(_read(args.db))
    sp = parse_space(_read(args.space))
    asg = parse_assignment(_read(args.asg), sp.outcomes)
    bound = probability_lower_bound(db, asg, sp)
    _emit(args, {"aggregated_evidence": print_term(aggregated_evidence(db), "u"), "bound": str(bound)},
          [str(bound)])
    return OK


def cmd_fuzz(args) -> int:
    config = _config(args)
    cs = _cs(args, config)
    seeds = range(args.seed, args.seed + args.count)
    report = fuzz_soundness(seeds, config, cs, max_worlds=args.max_worlds)
    lines = [
        f"counterexample seed={c.seed} source={c.source} world={c.world} formula={print_formula(c.formula)}"
        for c in report.counterexamples
    ]
    lines += [f"rejected {r}" for r in report.rejected]
    lines.append(
        f"{config.describe()}: {report.models} models, {report.derivations} derivations, "
        f"{report.checks} checks, {len(report.counterexamples)} counterexamples"
    )
    payload = {"logic": config.describe(), "seed": args.seed, "count": args.count, **report.to_dict()}
    _emit(args, payload, lines)
    return OK if report.ok else FAILED


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--logic", default="star", choices=["star", "app", "prob"])
    common.add_argument("--beta", default="", help="comma list from jt,jd,j4")
    common.add_argument("--cs", default="total", help="'total', 'empty' or a constant-specification file")
    common.add_argument("--no-pe", action="store_true", help="prob dialect without the evidence postulates")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, default=100)
    common.add_argument("--json", action="store_true")

    p = argparse.ArgumentParser(prog="subsetjl", description="Justification logic with subset models.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common], help="echo terms or formulas in canonical form")
    sp.add_argument("--kind", choices=["auto", "term", "formula"], default="auto")
    sp.add_argument("text", nargs="*")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("check-proof", parents=[common], help="check a derivation file")
    sp.add_argument("file")
    sp.add_argument("--max-atoms", type=int, default=24)
    sp.set_defaults(func=cmd_check_proof)

    sp = sub.add_parser("check-model", parents=[common], help="validate a model file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check_model)

    sp = sub.add_parser("eval", parents=[common], help="truth value of a formula at a world")
    sp.add_argument("file")
    sp.add_argument("world")
    sp.add_argument("formula")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("derive-j", parents=[common], help="emit the eight-step derivation of s.t")
    for name in ("s", "t", "a", "b"):
        sp.add_argument(name)
    sp.set_defaults(func=cmd_derive_j)

    sp = sub.add_parser("translate", parents=[common], help="erase all justification prefixes")
    sp.add_argument("formula")
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("aggregate", parents=[common], help="aggregated evidence of a database")
    sp.add_argument("--db", required=True)
    sp.set_defaults(func=cmd_aggregate)

    sp = sub.add_parser("bound", parents=[common], help="exact probability lower bound")
    sp.add_argument("--db", required=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--asg", required=True)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("fuzz-soundness", parents=[common], help="seeded soundness fuzzing")
    sp.add_argument("--max-worlds", type=int, default=5)
    sp.set_defaults(func=cmd_fuzz)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code in (0, None) else ERROR
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (ValueError, KeyError, OSError, UsageError) as exc:
        # ParseError and DialectError are ValueErrors
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
    return ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
