"""Command-line interface.

Subcommands
-----------
validate FILE                        per-axiom fragment report
entails FILE --goal "AXIOM"          decide entailment (level-wise grounding)
expand FILE --goal "AXIOM"           show the expansion levels and grounding
classify FILE --goal "AXIOM"         derived subsumptions over the expansion
oracle refute FILE --goal "AXIOM"    search finite countermodels
oracle check-model MODEL FILE        test an interpretation against a file
desugar FILE                         expand syntactic sugar and print
bench                                scaling measurement (CSV + figure)

Exit codes: 0 affirmative (entailed / valid / satisfied / done),
1 definitive negative, 2 unknown (budget or bound exhausted),
3 input or usage error.  ``--json`` mirrors every report with stable
field names.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import fit_loglog_slope, run_scaling, write_csv, write_figure
from .concepts import ElxError, concept_names, ground_ontology, sort_key
from .entailment import Status, check_schema, decide, generalize_goal
from .expansion import expand
from .fragments import classify_ontology
from .oracle import (
    FiniteInterpretation,
    Valuation,
    refute_entailment,
    singleton_mode_applicable,
    so_witness,
)
from .saturation import is_definition_name, normalize_ontology, saturate
from .syntax import (
    parse_axiom,
    parse_concept_base,
    parse_interpretation,
    parse_ontology,
    print_axiom,
    print_concept,
    print_interpretation,
    print_valuation,
)

EXIT_AFFIRMATIVE = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif text:
        print(text)


def _concept_list(concepts) -> list[str]:
    return [print_concept(c) for c in sorted(concepts, key=sort_key)]


def _valuation_payload(valuation: Optional[Valuation]) -> Optional[dict]:
    if valuation is None:
        return None
    return {v: sorted(ext) for v, ext in valuation.items()}


def _interp_payload(interp: FiniteInterpretation) -> dict:
    return {
        "domain": list(interp.domain),
        "concepts": {a: sorted(ext) for a, ext in interp.concept_ext.items()},
        "roles": {
            r: sorted([x, y] for x, y in pairs)
            for r, pairs in interp.role_ext.items()
        },
    }


def cmd_validate(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.file))
    reports = classify_ontology(doc.ontology)
    rows = []
    lines = []
    for pos, (ax, report) in enumerate(zip(doc.ontology, reports), start=1):
        rows.append(
            {
                "axiom": print_axiom(ax),
                "range_restricted": report.range_restricted,
                "lhs_linear": report.lhs_linear,
                "rhs_safe": report.rhs_safe,
                "gelo": report.is_gelo,
                "gelt": report.is_gelt,
                "violations": [v.reason for v in report.violations],
            }
        )
        flags = (
            f"range-restricted={'yes' if report.range_restricted else 'no'} "
            f"lhs-linear={'yes' if report.lhs_linear else 'no'} "
            f"rhs-safe={'yes' if report.rhs_safe else 'no'} "
            f"tractable={'yes' if report.is_gelt else 'no'}"
        )
        lines.append(f"axiom {pos}: {print_axiom(ax)}")
        lines.append(f"  {flags}")
        for v in report.violations:
            lines.append(f"  violation: {v.reason}")
    bad = sum(1 for r in reports if not r.is_gelo)
    if bad:
        lines.append(f"{bad} of {len(reports)} axioms outside the supported fragment")
    else:
        lines.append(f"all {len(reports)} axioms inside the supported fragment")
    ok = bad == 0
    _emit(
        args,
        {"status": "valid" if ok else "invalid", "axioms": rows},
        "\n".join(lines),
    )
    return EXIT_AFFIRMATIVE if ok else EXIT_NEGATIVE


def cmd_entails(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.file))
    goal = parse_axiom(args.goal, doc.symbols)
    if args.schema_base:
        base = parse_concept_base(_read(args.schema_base))
        ok = check_schema(doc.ontology, goal, base)
        _emit(
            args,
            {
                "status": "entailed" if ok else "not-entailed",
                "level": None,
                "definitive": True,
                "semantics": "fixed-base",
                "base": _concept_list(base),
            },
            ("ENTAILED" if ok else "NOT ENTAILED")
            + f" over the fixed base of {len(base)} concepts",
        )
        return EXIT_AFFIRMATIVE if ok else EXIT_NEGATIVE
    verdict = decide(
        doc.ontology,
        goal,
        max_levels=args.max_level,
        single_variable=args.single_variable,
    )
    payload = {
        "status": verdict.status.value,
        "level": verdict.level,
        "definitive": verdict.definitive,
        "fresh_names": dict(verdict.fresh_names),
        "levels": [_concept_list(level) for level in verdict.trace.levels],
    }
    if verdict.status is Status.ENTAILED:
        text = f"ENTAILED at level {verdict.level} (definitive)"
        code = EXIT_AFFIRMATIVE
    elif verdict.status is Status.NOT_ENTAILED:
        text = f"NOT ENTAILED (expansion closed at level {verdict.level})"
        code = EXIT_NEGATIVE
    else:
        text = (
            f"UNKNOWN after {len(verdict.trace)} levels without closure; "
            "raise --max-level for a deeper search"
        )
        code = EXIT_UNKNOWN
    _emit(args, payload, text)
    return code


def _generalized_goal(doc, goal):
    taken = concept_names(doc.ontology) | concept_names(goal)
    return generalize_goal(goal, taken)


def cmd_expand(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.file))
    goal = parse_axiom(args.goal, doc.symbols)
    ground_goal, fresh = _generalized_goal(doc, goal)
    trace = expand(doc.ontology, ground_goal, max_levels=args.max_level)
    grounded = ground_ontology(doc.ontology, trace.final)
    lines = [
        f"level {i}: {{{', '.join(_concept_list(level))}}}"
        for i, level in enumerate(trace.levels)
    ]
    lines.append(f"fixpoint reached: {'yes' if trace.fixpoint_reached else 'no'}")
    lines.append(f"grounded ontology ({len(grounded)} axioms):")
    lines.extend(f"  {print_axiom(ax)}" for ax in grounded)
    _emit(
        args,
        {
            "levels": [_concept_list(level) for level in trace.levels],
            "fixpoint": trace.fixpoint_reached,
            "grounded": [print_axiom(ax) for ax in grounded],
            "fresh_names": fresh,
        },
        "\n".join(lines),
    )
    return EXIT_AFFIRMATIVE if trace.fixpoint_reached else EXIT_UNKNOWN


def cmd_classify(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.file))
    goal = parse_axiom(args.goal, doc.symbols)
    ground_goal, _ = _generalized_goal(doc, goal)
    trace = expand(doc.ontology, ground_goal, max_levels=args.max_level)
    grounded = ground_ontology(doc.ontology, trace.final)
    user = sorted(concept_names(doc.ontology) | concept_names(goal))
    index = saturate(normalize_ontology(grounded), user)
    pairs = [
        (a, b)
        for a in user
        for b in sorted(index.subsumers.get(a, ()))
        if a != b and b in user and not is_definition_name(b)
    ]
    lines = [f"{a} SubClassOf {b}" for a, b in pairs]
    lines.append(
        f"{len(pairs)} derived subsumptions over the expansion base "
        f"(fixpoint reached: {'yes' if trace.fixpoint_reached else 'no'})"
    )
    _emit(
        args,
        {
            "status": "ok" if trace.fixpoint_reached else "incomplete",
            "level": len(trace) - 1,
            "definitive": trace.fixpoint_reached,
            "subsumptions": [[a, b] for a, b in pairs],
        },
        "\n".join(lines),
    )
    return EXIT_AFFIRMATIVE if trace.fixpoint_reached else EXIT_UNKNOWN


def cmd_oracle_refute(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.file))
    goal = parse_axiom(args.goal, doc.symbols)
    found = refute_entailment(doc.ontology, goal, max_domain=args.max_domain)
    if found is None:
        _emit(
            args,
            {
                "status": "exhausted",
                "counterexample": None,
                "max_domain": args.max_domain,
            },
            f"no countermodel with at most {args.max_domain} elements",
        )
        return EXIT_UNKNOWN
    interp, valuation = found
    payload_interp = _interp_payload(interp)
    payload_interp["valuation"] = _valuation_payload(valuation)
    n = len(interp.domain)
    lines = [
        f"countermodel found ({n} element{'s' if n != 1 else ''}):",
        print_interpretation(interp),
    ]
    if valuation:
        lines.append(f"goal violated at {print_valuation(valuation)}")
    _emit(
        args,
        {
            "status": "refuted",
            "counterexample": payload_interp,
            "max_domain": args.max_domain,
        },
        "\n".join(lines),
    )
    return EXIT_NEGATIVE


def cmd_oracle_check_model(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.ontology))
    interp = parse_interpretation(_read(args.model))
    for name in interp.concept_ext:
        if doc.symbols.kind_of(name) == "role":
            raise ElxError(
                f"{name!r} is a concept name in the model but a role name "
                "in the ontology"
            )
    for name in interp.role_ext:
        if doc.symbols.kind_of(name) == "concept":
            raise ElxError(
                f"{name!r} is a role name in the model but a concept name "
                "in the ontology"
            )
    violations: list[tuple] = []
    for ax in doc.ontology:
        mode = "singleton" if singleton_mode_applicable(ax) else "all"
        witness = so_witness(interp, ax, mode=mode)
        if witness is not None:
            violations.append((ax, witness))
    if not violations:
        _emit(
            args,
            {"status": "satisfied", "violations": []},
            f"model satisfies all {len(doc.ontology)} axioms",
        )
        return EXIT_AFFIRMATIVE
    lines = []
    rows = []
    for ax, witness in violations:
        line = f"violated: {print_axiom(ax)}"
        if witness:
            line += f" at {print_valuation(witness)}"
        lines.append(line)
        rows.append(
            {"axiom": print_axiom(ax), "valuation": _valuation_payload(witness)}
        )
    _emit(args, {"status": "violated", "violations": rows}, "\n".join(lines))
    return EXIT_NEGATIVE


def cmd_desugar(args: argparse.Namespace) -> int:
    doc = parse_ontology(_read(args.file))
    _emit(
        args,
        {"status": "ok", "axioms": [print_axiom(ax) for ax in doc.ontology]},
        "\n".join(print_axiom(ax) for ax in doc.ontology),
    )
    return EXIT_AFFIRMATIVE


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise ElxError("no sizes given")
    points = run_scaling(sizes, repeats=args.repeats)
    slope = fit_loglog_slope(points) if len(points) > 1 else float("nan")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "scaling.csv"
    fig_path = out_dir / "scaling.png"
    write_csv(points, str(csv_path))
    write_figure(points, str(fig_path))
    lines = [f"size {p.size}: {p.seconds:.4f} s" for p in points]
    lines.append(f"log-log slope: {slope:.2f}")
    lines.append(f"wrote {csv_path} and {fig_path}")
    _emit(
        args,
        {
            "status": "ok",
            "slope": slope,
            "points": [{"size": p.size, "seconds": p.seconds} for p in points],
            "csv": str(csv_path),
            "figure": str(fig_path),
        },
        "\n".join(lines),
    )
    return EXIT_AFFIRMATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit a machine-readable report"
    )
    parser = argparse.ArgumentParser(
        prog="elx",
        description="reasoner for EL ontologies with concept variables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="fragment report")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("entails", parents=[common], help="decide entailment")
    p.add_argument("file")
    p.add_argument("--goal", required=True, help="goal axiom, quoted")
    p.add_argument("--max-level", type=int, default=10)
    p.add_argument(
        "--schema-base",
        metavar="FILE",
        help="decide over this fixed concept base instead of expanding",
    )
    p.add_argument(
        "--single-variable",
        action="store_true",
        help="rewrite the ontology to one variable per axiom first",
    )
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("expand", parents=[common], help="show expansion levels")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--max-level", type=int, default=10)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser(
        "classify", parents=[common], help="subsumptions over the expansion"
    )
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--max-level", type=int, default=10)
    p.set_defaults(func=cmd_classify)

    oracle = sub.add_parser("oracle", help="finite-model checking")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("refute", parents=[common], help="search countermodels")
    p.add_argument("file")
    p.add_argument("--goal", required=True)
    p.add_argument("--max-domain", type=int, default=3)
    p.set_defaults(func=cmd_oracle_refute)

    p = osub.add_parser(
        "check-model", parents=[common], help="test a model against a file"
    )
    p.add_argument("model")
    p.add_argument("ontology")
    p.set_defaults(func=cmd_oracle_check_model)

    p = sub.add_parser("desugar", parents=[common], help="expand sugar and print")
    p.add_argument("file")
    p.set_defaults(func=cmd_desugar)

    p = sub.add_parser("bench", parents=[common], help="scaling measurement")
    p.add_argument("--sizes", default="10,20,40,80")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return EXIT_AFFIRMATIVE if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (ElxError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
