"""Report containers and the text / JSON renderers.

Text output prints similarity matrices in the row/column grid style with
2-decimal degrees.  JSON output never carries bare floating-point degrees:
every degree is an exact ``{"num": ..., "den": ..., "display": ...}`` object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .dependencies import (
    Dependency,
    FunctionalDep,
    JoinDep,
    MultivaluedDep,
    render_attrs,
    render_dep,
)
from .engine import (
    CheckReport,
    Counterexample,
    DecompositionNode,
    NormalFormReport,
    PairRecord,
    Reconstruction,
    tree_nodes,
)
from .oracle import OracleDiff
from .reference import DivergenceNote
from .relation import Schema, SimilarityMatrix
from .similarity import AttributeValue, Degree, format_degree, format_value


@dataclass
class SimMatrixReport:
    matrix: SimilarityMatrix
    notes: list[DivergenceNote] = field(default_factory=list)
    figure: Optional[str] = None


@dataclass
class CheckRunReport:
    schema: Schema
    reports: list[CheckReport]

    @property
    def holds(self) -> bool:
        return all(rep.holds for rep in self.reports)


@dataclass
class KeysReport:
    schema: Schema
    keys: list[tuple[str, ...]]


@dataclass
class LosslessReport:
    schema: Schema
    components: list[frozenset]
    alpha: Degree
    evidence: Reconstruction

    @property
    def holds(self) -> bool:
        return self.evidence.holds


@dataclass
class OracleRunReport:
    schema: Schema
    diffs: list[OracleDiff]

    @property
    def agree(self) -> bool:
        return all(diff.agree for diff in self.diffs)


@dataclass
class DecompositionReport:
    rule: str
    alpha: Degree
    root: DecompositionNode
    figure: Optional[str] = None

    @property
    def all_lossless(self) -> bool:
        return all(node.lossless_verified for node in tree_nodes(self.root))


Report = Union[
    SimMatrixReport,
    CheckRunReport,
    KeysReport,
    NormalFormReport,
    LosslessReport,
    OracleRunReport,
    DecompositionReport,
]


# ---------------------------------------------------------------------------
# JSON building blocks


def degree_json(degree: Degree) -> dict:
    return {
        "num": degree.numerator,
        "den": degree.denominator,
        "display": format_degree(degree),
    }


def value_json(value: AttributeValue):
    if isinstance(value, frozenset):
        return sorted(value)
    return value


def dep_json(dep: Dependency, schema: Optional[Schema] = None) -> dict:
    def names(attrs):
        return list(schema.ordered(attrs)) if schema else sorted(attrs)

    if isinstance(dep, FunctionalDep):
        return {"type": "fd", "lhs": names(dep.lhs), "rhs": names(dep.rhs)}
    if isinstance(dep, MultivaluedDep):
        return {"type": "mvd", "lhs": names(dep.lhs), "rhs": names(dep.rhs)}
    return {"type": "jd", "components": [names(c) for c in dep.components]}


def _record_json(record: PairRecord) -> dict:
    out = {
        "tuples": list(record.tuples),
        "degrees": {k: degree_json(v) for k, v in record.degrees.items()},
        "satisfied": record.satisfied,
    }
    if record.note:
        out["note"] = record.note
    if record.values is not None:
        out["values"] = [value_json(v) for v in record.values]
    return out


def _counterexample_json(ce: Counterexample) -> dict:
    out = {
        "tuples": list(ce.tuples),
        "attrs": {k: list(v) for k, v in ce.attrs.items()},
        "degrees": {k: degree_json(v) for k, v in ce.degrees.items()},
        "reason": ce.reason,
    }
    if ce.values is not None:
        out["values"] = [value_json(v) for v in ce.values]
    return out


def _check_report_json(rep: CheckReport) -> dict:
    out = {
        "dependency": dep_json(rep.dependency, rep.schema),
        "check": rep.check,
        "mode": rep.mode,
        "alpha": degree_json(rep.alpha) if rep.alpha is not None else None,
        "holds": rep.holds,
        "counterexamples": [_counterexample_json(c) for c in rep.counterexamples],
        "trace": [_record_json(t) for t in rep.trace],
    }
    if rep.notes:
        out["notes"] = rep.notes
    return out


def _note_json(note: DivergenceNote) -> dict:
    return {
        "attribute": note.attribute,
        "row": value_json(note.row_value),
        "col": value_json(note.col_value),
        "published": note.published,
        "computed": degree_json(note.computed),
    }


def _tree_json(node: DecompositionNode) -> dict:
    return {
        "attributes": list(node.attrs),
        "tuples": len(node.instance.tuples),
        "applied": dep_json(node.applied, node.instance.schema)
        if node.applied
        else None,
        "lossless_verified": node.lossless_verified,
        "in_5nf": node.nf_report.holds,
        "children": [_tree_json(child) for child in node.children],
    }


def report_json(report: Report) -> dict:
    """The documented JSON body for any report type."""
    if isinstance(report, SimMatrixReport):
        matrix = report.matrix
        out = {
            "attribute": matrix.attribute,
            "values": [value_json(v) for v in matrix.values],
            "matrix": [[degree_json(d) for d in row] for row in matrix.entries],
            "notes": [_note_json(n) for n in report.notes],
        }
        if report.figure:
            out["figure"] = report.figure
        return out
    if isinstance(report, CheckRunReport):
        return {
            "holds": report.holds,
            "dependencies": [_check_report_json(rep) for rep in report.reports],
        }
    if isinstance(report, KeysReport):
        return {"candidate_keys": [list(key) for key in report.keys]}
    if isinstance(report, NormalFormReport):
        return {
            "rule": report.rule,
            "holds": report.holds,
            "candidate_keys": [list(key) for key in report.keys],
            "join_dependencies": [
                {
                    "dependency": dep_json(a.jd, report.schema),
                    "holds_in_instance": a.holds_in_instance,
                    "trivial": a.trivial,
                    "violations": [
                        {
                            "role": v.role,
                            "attrs": list(v.attrs),
                            "witness": _counterexample_json(v.witness)
                            if v.witness
                            else None,
                        }
                        for v in a.violations
                    ],
                    "report": _check_report_json(a.report),
                }
                for a in report.jds
            ],
            "other_dependencies": [
                _check_report_json(rep) for rep in report.dep_reports
            ],
        }
    if isinstance(report, LosslessReport):
        return {
            "components": [list(report.schema.ordered(c)) for c in report.components],
            "alpha": degree_json(report.alpha),
            "holds": report.holds,
            "counterexamples": [
                _counterexample_json(c) for c in report.evidence.counterexamples
            ],
            "trace": [_record_json(t) for t in report.evidence.trace],
        }
    if isinstance(report, OracleRunReport):
        return {
            "agree": report.agree,
            "results": [
                {
                    "dependency": dep_json(d.dependency, report.schema),
                    "mode": d.mode,
                    "fuzzy_holds": d.fuzzy_holds,
                    "classical_holds": d.classical_holds,
                    "agree": d.agree,
                    "fuzzy_report": _check_report_json(d.fuzzy_report),
                }
                for d in report.diffs
            ],
        }
    if isinstance(report, DecompositionReport):
        out = {
            "rule": report.rule,
            "alpha": degree_json(report.alpha),
            "all_lossless": report.all_lossless,
            "tree": _tree_json(report.root),
        }
        if report.figure:
            out["figure"] = report.figure
        return out
    raise TypeError(f"unknown report type {type(report).__name__}")


# ---------------------------------------------------------------------------
# Text rendering


def _record_line(record: PairRecord) -> str:
    ids = ",".join(str(i) for i in record.tuples)
    parts = [f"({ids})"]
    if record.values is not None:
        parts.append("(" + ", ".join(format_value(v) for v in record.values) + ")")
    parts.append(" ".join(f"{k}={format_degree(v)}" for k, v in record.degrees.items()))
    if record.note:
        parts.append(f"[{record.note}]")
    parts.append("ok" if record.satisfied else "VIOLATED")
    return "    " + " ".join(p for p in parts if p)


def _counterexample_line(ce: Counterexample) -> str:
    head = ""
    if ce.tuples:
        head = "tuples (" + ",".join(str(i) for i in ce.tuples) + "): "
    roles = " ".join(f"{k}={{{','.join(v)}}}" for k, v in ce.attrs.items())
    line = f"    - {head}{ce.reason}"
    if roles:
        line += f"  [{roles}]"
    return line


def _check_header(rep: CheckReport) -> str:
    tag = ""
    if rep.mode:
        tag = f" [{rep.mode}"
        if rep.alpha is not None:
            tag += f", alpha={format_degree(rep.alpha)}"
        tag += "]"
    verdict = "holds" if rep.holds else "VIOLATED"
    return f"{render_dep(rep.dependency, rep.schema)}{tag}: {verdict}"


def _check_report_text(rep: CheckReport) -> list[str]:
    lines = [_check_header(rep)]
    if rep.counterexamples:
        lines.append("  counterexamples:")
        lines.extend(_counterexample_line(c) for c in rep.counterexamples)
    if rep.trace:
        lines.append("  trace:")
        lines.extend(_record_line(t) for t in rep.trace)
    for note in rep.notes:
        lines.append(f"  note: {note}")
    return lines


def _matrix_text(report: SimMatrixReport) -> list[str]:
    matrix = report.matrix
    labels = [format_value(v) for v in matrix.values]
    width = max((len(label) for label in labels), default=4)
    col = max(width, 6)
    lines = [
        f"attribute: {matrix.attribute}",
        f"distinct values: {len(labels)}",
        "",
        " " * width + "".join("  " + label.rjust(col) for label in labels),
    ]
    for label, row in zip(labels, matrix.entries):
        lines.append(
            label.ljust(width)
            + "".join("  " + format_degree(d).rjust(col) for d in row)
        )
    if report.notes:
        lines.append("")
        lines.append("notes:")
        for n in report.notes:
            lines.append(
                f"- ds({format_value(n.row_value)},{format_value(n.col_value)}):"
                f" published value {n.published} differs from formula value"
                f" {format_degree(n.computed)}"
            )
    if report.figure:
        lines.append("")
        lines.append(f"figure: {report.figure}")
    return lines


def _normal_form_text(report: NormalFormReport) -> list[str]:
    if report.holds:
        lines = ["in 5NF"]
    else:
        first = next(v for a in report.jds for v in a.violations)
        lines = [
            f"NOT in 5NF: {first.role} {{{','.join(first.attrs)}}} is not a superkey"
        ]
    lines.append(f"rule: {report.rule}")
    keys = ", ".join("{" + ",".join(k) + "}" for k in report.keys) or "(none)"
    lines.append(f"candidate keys: {keys}")
    if report.jds:
        lines.append("join dependencies:")
        for a in report.jds:
            status = "holds" if a.holds_in_instance else "does not hold"
            kind = "trivial" if a.trivial else "nontrivial"
            lines.append(
                f"- {render_dep(a.jd, report.schema)}: {status} in the instance,"
                f" {kind}"
            )
            for v in a.violations:
                witness = f": {v.witness.reason}" if v.witness else ""
                if v.witness and v.witness.tuples:
                    ids = ",".join(str(i) for i in v.witness.tuples)
                    witness = f": tuples ({ids}): {v.witness.reason}"
                lines.append(
                    f"  - {v.role} {{{','.join(v.attrs)}}} is not a superkey{witness}"
                )
    if report.dep_reports:
        lines.append("other dependencies:")
        for rep in report.dep_reports:
            lines.append(f"- {_check_header(rep)}")
            lines.extend("  " + l for c in rep.counterexamples for l in [_counterexample_line(c)])
    return lines


def _tree_text(node: DecompositionNode, depth: int = 0) -> list[str]:
    attrs = "{" + ",".join(node.attrs) + "}"
    if node.applied is not None:
        verified = "yes" if node.lossless_verified else "NO"
        detail = (
            f"split by {render_dep(node.applied, node.instance.schema)}"
            f" lossless={verified}"
        )
    else:
        detail = "leaf (in 5NF)" if node.nf_report.holds else "leaf (NOT in 5NF)"
    lines = [f"{'  ' * depth}- {attrs} tuples={len(node.instance.tuples)} {detail}"]
    for child in node.children:
        lines.extend(_tree_text(child, depth + 1))
    return lines


def render_text(report: Report) -> str:
    """Human-readable rendering of any report type."""
    if isinstance(report, SimMatrixReport):
        return "\n".join(_matrix_text(report))
    if isinstance(report, CheckRunReport):
        lines = []
        for rep in report.reports:
            lines.extend(_check_report_text(rep))
        held = sum(1 for rep in report.reports if rep.holds)
        lines.append(f"summary: {held}/{len(report.reports)} hold")
        return "\n".join(lines)
    if isinstance(report, KeysReport):
        lines = [f"candidate keys ({len(report.keys)}):"]
        lines.extend("- {" + ",".join(key) + "}" for key in report.keys)
        return "\n".join(lines)
    if isinstance(report, NormalFormReport):
        return "\n".join(_normal_form_text(report))
    if isinstance(report, LosslessReport):
        components = ",".join(
            "(" + ",".join(report.schema.ordered(c)) + ")" for c in report.components
        )
        lines = [
            f"lossless: {'yes' if report.holds else 'NO'}"
            f" (alpha={format_degree(report.alpha)})",
            f"components: {components}",
        ]
        if report.evidence.counterexamples:
            lines.append("counterexamples:")
            lines.extend(
                _counterexample_line(c) for c in report.evidence.counterexamples
            )
        return "\n".join(lines)
    if isinstance(report, OracleRunReport):
        agreeing = sum(1 for d in report.diffs if d.agree)
        lines = [
            f"agreement: {'yes' if report.agree else 'NO'}"
            f" ({agreeing}/{len(report.diffs)})"
        ]
        for d in report.diffs:
            mode = f" [{d.mode}]" if d.mode else ""
            lines.append(
                f"- {render_dep(d.dependency, report.schema)}{mode}:"
                f" fuzzy={'holds' if d.fuzzy_holds else 'violated'}"
                f" classical={'holds' if d.classical_holds else 'violated'}"
                f" {'agree' if d.agree else 'DISAGREE'}"
            )
        return "\n".join(lines)
    if isinstance(report, DecompositionReport):
        lines = [
            f"decomposition (rule: {report.rule},"
            f" alpha: {format_degree(report.alpha)}):"
            f" {'all splits lossless' if report.all_lossless else 'LOSSY SPLIT FOUND'}"
        ]
        lines.extend(_tree_text(report.root))
        if report.figure:
            lines.append(f"figure: {report.figure}")
        return "\n".join(lines)
    raise TypeError(f"unknown report type {type(report).__name__}")


def emit_report(report: Optional[Report], format: str = "text") -> str:
    """Render a report as text or as a JSON document."""
    if format not in ("text", "json"):
        raise ValueError(f"unknown format {format!r}")
    if report is None:
        return "{}" if format == "json" else ""
    if format == "json":
        return json.dumps(report_json(report), indent=2)
    return render_text(report)
