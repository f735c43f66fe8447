"""Command-line interface: every analysis as a subcommand over files.

Exit codes: 0 when the checked property holds (or the command is purely
informational), 1 when it is violated, 2 on usage, parse, or schema errors.
"""

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .engine import check_dependency, decompose_5nf, is_5nf, lossless_evidence, candidate_keys
from .oracle import CrispRelation, oracle_diff
from .parsing import ParseError, parse_alpha, parse_components, parse_deps, parse_relation
from .reference import divergence_notes
from .relation import SchemaError, sim_matrix
from .report import (
    CheckRunReport,
    DecompositionReport,
    KeysReport,
    LosslessReport,
    OracleRunReport,
    SimMatrixReport,
    report_json,
    render_text,
)
from .similarity import ONE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzy5nf",
        description="Similarity-based dependency checking and 5NF decomposition "
        "for relations with set-valued attributes.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sim-matrix", parents=[fmt], help="similarity matrix of one column")
    p.add_argument("relation")
    p.add_argument("--attr", required=True, help="attribute name")
    p.add_argument("--plot", metavar="FILE", help="also render a heatmap figure")

    p = sub.add_parser("check", parents=[fmt], help="check declared dependencies")
    p.add_argument("relation")
    p.add_argument("--deps", required=True)
    p.add_argument(
        "--mode",
        choices=("paper", "witness", "pairwise", "reconstruction"),
        help="MVD mode (paper|witness) and/or JD mode (pairwise|reconstruction); "
        "unaffected kinds use the defaults (witness, reconstruction)",
    )
    p.add_argument("--alpha", type=parse_alpha, default=ONE, help="p/q or decimal in [0,1]")

    p = sub.add_parser("keys", parents=[fmt], help="candidate keys of the instance")
    p.add_argument("relation")

    p = sub.add_parser("is-5nf", parents=[fmt], help="test the keyed-JD normal form")
    p.add_argument("relation")
    p.add_argument("--deps", required=True)
    p.add_argument("--rule", choices=("component", "determinant"), default="component")

    p = sub.add_parser("decompose", parents=[fmt], help="recursive 5NF decomposition")
    p.add_argument("relation")
    p.add_argument("--deps", required=True)
    p.add_argument("--alpha", type=parse_alpha, default=ONE)
    p.add_argument("--rule", choices=("component", "determinant"), default="component")
    p.add_argument("--plot", metavar="FILE", help="also render the tree as a figure")

    p = sub.add_parser("verify-lossless", parents=[fmt], help="project-join-compare a cover")
    p.add_argument("relation")
    p.add_argument("--components", required=True, help='e.g. "(a,b),(b,c)"')
    p.add_argument("--alpha", type=parse_alpha, default=ONE)

    p = sub.add_parser("oracle-diff", parents=[fmt], help="fuzzy engine vs classical oracle")
    p.add_argument("relation")
    p.add_argument("--deps", required=True)
    return parser


def _file_info(path: str) -> dict:
    data = Path(path).read_bytes()
    return {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(args, inputs: dict, report, code: int) -> int:
    if args.format == "json":
        body = {"command": args.command, "inputs": inputs}
        body.update(report_json(report))
        print(json.dumps(body, indent=2))
    else:
        print(render_text(report))
    return code


def _dispatch(args) -> int:
    inputs = {"relation": _file_info(args.relation)}
    r = parse_relation(_read(args.relation))
    deps = None
    if getattr(args, "deps", None):
        inputs["deps"] = _file_info(args.deps)
        deps = parse_deps(_read(args.deps))

    if args.command == "sim-matrix":
        matrix = sim_matrix(r, args.attr)
        figure = None
        if args.plot:
            from .plotting import plot_similarity_matrix

            plot_similarity_matrix(matrix, args.plot)
            figure = args.plot
        return _emit(args, inputs, SimMatrixReport(matrix, divergence_notes(r, matrix), figure), 0)

    if args.command == "check":
        mvd_mode = "paper" if args.mode == "paper" else "witness"
        jd_mode = "pairwise" if args.mode == "pairwise" else "reconstruction"
        reports = [check_dependency(r, dep, args.alpha, mvd_mode, jd_mode) for dep in deps]
        run = CheckRunReport(r.schema, reports)
        return _emit(args, inputs, run, 0 if run.holds else 1)

    if args.command == "keys":
        return _emit(args, inputs, KeysReport(r.schema, candidate_keys(r)), 0)

    if args.command == "is-5nf":
        nf = is_5nf(r, deps, args.rule)
        return _emit(args, inputs, nf, 0 if nf.holds else 1)

    if args.command == "decompose":
        root = decompose_5nf(r, deps, args.alpha, args.rule)
        rep = DecompositionReport(args.rule, args.alpha, root)
        if args.plot:
            from .plotting import plot_decomposition_tree

            plot_decomposition_tree(root, args.plot)
            rep.figure = args.plot
        return _emit(args, inputs, rep, 0 if rep.all_lossless else 1)

    if args.command == "verify-lossless":
        components = parse_components(args.components)
        evidence = lossless_evidence(r, components, args.alpha)
        rep = LosslessReport(r.schema, components, args.alpha, evidence)
        return _emit(args, inputs, rep, 0 if rep.holds else 1)

    if args.command == "oracle-diff":
        crisp = CrispRelation(r)
        diffs = [oracle_diff(crisp, dep) for dep in deps]
        rep = OracleRunReport(r.schema, diffs)
        return _emit(args, inputs, rep, 0 if rep.agree else 1)

    raise AssertionError(f"unhandled command {args.command!r}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (ParseError, SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
