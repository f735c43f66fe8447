"""Brute-force classical dependency checkers on all-atom relations.

These are the ground truth for the graded engine's crisp specializations:
at alpha = 1, with identity similarity on atoms, the graded FD / witness-MVD
/ reconstruction-JD verdicts must agree with these checkers on every input.
The projection and join here are written directly on raw tuples so that the
two code paths stay independent.
"""

from dataclasses import dataclass
from typing import Optional

from .dependencies import Dependency, FunctionalDep, JoinDep, MultivaluedDep
from .engine import CheckReport, check_dependency
from .relation import ATOM, RelationInstance, SchemaError
from .similarity import ONE


@dataclass(frozen=True)
class CrispRelation:
    """A relation instance whose attributes are all atom-kinded."""

    instance: RelationInstance

    def __post_init__(self):
        for attr in self.instance.schema.attributes:
            if attr.kind != ATOM:
                raise SchemaError(
                    f"crisp oracle needs atom attributes, {attr.name!r} is set-kinded"
                )


def _positions(r: CrispRelation, names) -> list[int]:
    return [r.instance.schema.index_of(n) for n in r.instance.schema.ordered(names)]


def classical_fd(r: CrispRelation, fd: FunctionalDep) -> bool:
    """Textbook FD: no two tuples agree on X and differ on Y."""
    xs = _positions(r, fd.lhs)
    ys = _positions(r, fd.rhs)
    rows = r.instance.tuples
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if all(rows[i][p] == rows[j][p] for p in xs) and any(
                rows[i][p] != rows[j][p] for p in ys
            ):
                return False
    return True


def classical_mvd(r: CrispRelation, mvd: MultivaluedDep) -> bool:
    """Textbook MVD: every pair agreeing on X has a mixing witness tuple."""
    names = frozenset(r.instance.names)
    xs = _positions(r, mvd.lhs)
    ys = _positions(r, mvd.rhs)
    zs = _positions(r, names - mvd.lhs - mvd.rhs)
    rows = r.instance.tuples
    for t1 in rows:
        for t2 in rows:
            if any(t1[p] != t2[p] for p in xs):
                continue
            if not any(
                all(t3[p] == t1[p] for p in xs)
                and all(t3[p] == t1[p] for p in ys)
                and all(t3[p] == t2[p] for p in zs)
                for t3 in rows
            ):
                return False
    return True


def _project_rows(r: CrispRelation, names) -> tuple[tuple[str, ...], set]:
    ordered = r.instance.schema.ordered(names)
    positions = [r.instance.schema.index_of(n) for n in ordered]
    return ordered, {tuple(row[p] for p in positions) for row in r.instance.tuples}


def _natural_join(
    names1: tuple[str, ...], rows1: set, names2: tuple[str, ...], rows2: set
) -> tuple[tuple[str, ...], set]:
    shared = [n for n in names2 if n in names1]
    extra = [n for n in names2 if n not in names1]
    out_names = names1 + tuple(extra)
    i1 = {n: names1.index(n) for n in names1}
    i2 = {n: names2.index(n) for n in names2}
    out = set()
    for a in rows1:
        for b in rows2:
            if all(a[i1[n]] == b[i2[n]] for n in shared):
                out.add(a + tuple(b[i2[n]] for n in extra))
    return out_names, out


def classical_jd(r: CrispRelation, jd: JoinDep) -> bool:
    """Instance-level JD: the natural join of the projections equals r."""
    union = frozenset()
    for component in jd.components:
        union |= r.instance.schema.subset(component)
    if union != frozenset(r.instance.names):
        raise SchemaError("join dependency components do not cover the schema")
    names, rows = _project_rows(r, jd.components[0])
    for component in jd.components[1:]:
        names, rows = _natural_join(names, rows, *_project_rows(r, component))
    order = [names.index(n) for n in r.instance.names]
    rejoined = {tuple(row[p] for p in order) for row in rows}
    return rejoined == set(r.instance.tuples)


@dataclass
class OracleDiff:
    """Side-by-side verdicts of the graded engine and the classical checker."""

    dependency: Dependency
    mode: Optional[str]
    fuzzy_holds: bool
    classical_holds: bool
    agree: bool
    fuzzy_report: CheckReport


def oracle_diff(r: CrispRelation, dep: Dependency) -> OracleDiff:
    """Run both pipelines on a crisp instance and compare verdicts."""
    report = check_dependency(
        r.instance, dep, alpha=ONE, mvd_mode="witness", jd_mode="reconstruction"
    )
    if isinstance(dep, FunctionalDep):
        classical = classical_fd(r, dep)
    elif isinstance(dep, MultivaluedDep):
        classical = classical_mvd(r, dep)
    else:
        classical = classical_jd(r, dep)
    return OracleDiff(
        dep, report.mode, report.holds, classical, report.holds == classical, report
    )
