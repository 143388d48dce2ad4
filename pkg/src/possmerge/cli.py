"""Command-line driver.

Exit codes: 0 consistent merge / query entailed / all postulates pass;
1 usage or parse error; 2 inconsistent merge result / query not entailed;
3 postulate counterexample found; 4 semantic and syntactic merges disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from fractions import Fraction

from .generators import GeneratorParams
from .logic import (
    MAX_ATOMS,
    LogicError,
    check_size,
    enumerate_models,
    entails,
    truth_table,
)
from .postulates import ALL_IDS, FAIL, NOT_APPLICABLE, PASS, run_suite
from .reductions import merge_c4, merge_gmin
from .report import render_result
from .semantic import merge_semantic, models_to_formula
from .syntactic import merge_syntactic
from .syntax import ParseError, parse_formula, parse_problem

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_DISAGREEMENT = 4


class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str, cap: int):
    problem = parse_problem(_read(path))
    check_size(problem.vocabulary, cap)
    return problem


def _merge(problem, method: str):
    E, mu, v = problem
    if method == "semantic":
        models = merge_semantic(E, mu, v)
        return models, models_to_formula(models, v), None
    formula, trace = merge_syntactic(E, mu, v)
    if method == "both":
        expected = merge_semantic(E, mu, v)
        if truth_table(formula, v) != sum(1 << w.index for w in expected):
            raise CliError("semantic and syntactic merges disagree")
    return enumerate_models(formula, v), formula, trace


def cmd_merge(args) -> int:
    problem = _load(args.file, args.vars_cap)
    try:
        models, formula, trace = _merge(problem, args.method)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    if trace is not None and not args.trace and args.output != "json":
        trace = None
    sys.stdout.write(
        render_result(models, formula, trace, args.output, problem.vocabulary, args.method, problem.profile.names())
    )
    return EXIT_OK if models else EXIT_NEGATIVE


def cmd_entails(args) -> int:
    problem = _load(args.file, args.vars_cap)
    query = parse_formula(args.query)
    v = problem.vocabulary.with_atoms(query.atoms())
    check_size(v, args.vars_cap)
    formula, _ = merge_syntactic(problem.profile, problem.constraint, v)
    ok = entails([formula], query, v)
    print("entailed" if ok else "not entailed")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    E, mu, v = _load(args.file, args.vars_cap)
    if any(wf.weight != 1 for B in E for wf in B):
        raise CliError("reduce needs a classical profile: every weight must be 1")
    classical = [B.classical for B in E]
    if args.operator == "c4":
        formula = merge_c4(classical, mu)
        models = enumerate_models(formula, v)
    else:
        models = merge_gmin(classical, mu, v)
        formula = models_to_formula(models, v)
    sys.stdout.write(render_result(models, formula, None, args.output, v, args.operator))
    return EXIT_OK if models else EXIT_NEGATIVE


def parse_params(text: str | None, seed: int) -> GeneratorParams:
    """``atoms=5,bases=4,weights=1/10;1/2;1`` style overrides."""
    kwargs: dict = {"seed": seed}
    known = {f.name: f for f in fields(GeneratorParams)}
    for item in filter(None, (text or "").split(",")):
        key, _, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if key not in known or key == "seed":
            raise CliError(f"unknown generator parameter {key!r}")
        if key == "weights":
            kwargs[key] = tuple(Fraction(w) for w in value.split(";") if w)
        elif key == "consistency_bias":
            kwargs[key] = float(value)
        else:
            kwargs[key] = int(value)
    try:
        return GeneratorParams(**kwargs)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_postulates(args) -> int:
    ids = [i.strip().upper() for i in args.ids.split(",")] if args.ids else list(ALL_IDS)
    unknown = [i for i in ids if i not in ALL_IDS]
    if unknown:
        raise CliError(f"unknown postulate ids: {', '.join(unknown)}")
    params = parse_params(args.params, args.seed)
    report = run_suite(args.seed, args.trials, ids, params)
    for pid in ids:
        c = report.counts[pid]
        status = "FAIL" if c[FAIL] else "ok"
        print(f"{pid:5} {status:4} pass={c[PASS]} fail={c[FAIL]} n/a={c[NOT_APPLICABLE]}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2)
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="possmerge", description="Lexicographic merging of possibilistic knowledge bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file(p):
        p.add_argument("file", help="problem file, or - for stdin")
        p.add_argument("--vars-cap", type=int, default=MAX_ATOMS, help="refuse vocabularies larger than this")

    p = sub.add_parser("merge", help="merge the profile of a problem file")
    add_file(p)
    p.add_argument("--method", choices=("semantic", "syntactic", "both"), default="syntactic")
    p.add_argument("--output", choices=("models", "formula", "json"), default="models")
    p.add_argument("--trace", action="store_true", help="print the iteration trace of the syntactic merge")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("entails", help="does the merged base entail a formula?")
    add_file(p)
    p.add_argument("--query", required=True)
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("reduce", help="classical operators on weight-1 profiles")
    add_file(p)
    p.add_argument("--operator", choices=("c4", "gmin"), required=True)
    p.add_argument("--output", choices=("models", "formula", "json"), default="models")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("postulates", help="check postulates on seeded random instances")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--ids", help="comma-separated subset of " + ",".join(ALL_IDS))
    p.add_argument("--params", help="generator overrides, e.g. atoms=5,bases=4,weights=1/10;1/2;1")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_postulates)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, LogicError, CliError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
