"""Dependency verification, superkeys, the 5NF test, and lossless decomposition.

Two readings are exposed wherever the graded definitions are ambiguous:

* multivalued dependencies: ``paper`` checks the graded implication
  ds(X) <= ds(Y)  =>  ds(X) <= ds(Z) on every tuple pair, while ``witness``
  asks for an existential middle tuple and is exactly the classical
  definition on crisp data;
* join dependencies: ``pairwise`` derives one graded MVD per component pair
  (determinant = the pair's intersection), while ``reconstruction``
  projects, rejoins at a similarity threshold, and demands mutual coverage.

The classically grounded readings (``witness`` / ``reconstruction``) are the
defaults everywhere; reports always name the mode they used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .dependencies import (
    Dependency,
    FunctionalDep,
    JoinDep,
    MultivaluedDep,
    render_attrs,
)
from .relation import (
    RelationInstance,
    Row,
    Schema,
    SchemaError,
    check_alpha,
    ds_tuple,
    fuzzy_join,
    project,
)
from .similarity import ONE, ZERO, Degree, format_degree, format_value

MVD_MODES = ("witness", "paper")
JD_MODES = ("reconstruction", "pairwise")
NF_RULES = ("component", "determinant")


@dataclass
class PairRecord:
    """One inequality / coverage record in a check trace."""

    tuples: tuple[int, ...]
    degrees: dict[str, Degree]
    satisfied: bool
    note: str = ""
    values: Optional[Row] = None


@dataclass
class Counterexample:
    """A concrete violation: which tuples, which attribute sets, which degrees."""

    tuples: tuple[int, ...]
    attrs: dict[str, tuple[str, ...]]
    degrees: dict[str, Degree]
    reason: str
    values: Optional[Row] = None


@dataclass
class CheckReport:
    """Verdict plus full evidence for one dependency check."""

    schema: Schema
    dependency: Dependency
    check: str
    mode: Optional[str]
    alpha: Optional[Degree]
    holds: bool
    counterexamples: list[Counterexample]
    trace: list[PairRecord]
    notes: list[str] = field(default_factory=list)


def _roles(schema: Schema, **named: Iterable[str]) -> dict[str, tuple[str, ...]]:
    return {role: schema.ordered(names) for role, names in named.items()}


def check_ffd(r: RelationInstance, fd: FunctionalDep) -> CheckReport:
    """Graded functional dependency: every tuple pair must be at least as
    similar on the right side as on the left side."""
    x = r.schema.subset(fd.lhs)
    y = r.schema.subset(fd.rhs)
    trace: list[PairRecord] = []
    bad: list[Counterexample] = []
    for i, j in combinations(range(len(r.tuples)), 2):
        dx = ds_tuple(r.schema, r.tuples[i], r.tuples[j], x)
        dy = ds_tuple(r.schema, r.tuples[i], r.tuples[j], y)
        ok = dx <= dy
        trace.append(PairRecord((i, j), {"ds(X)": dx, "ds(Y)": dy}, ok))
        if not ok:
            bad.append(
                Counterexample(
                    (i, j),
                    _roles(r.schema, X=x, Y=y),
                    {"ds(X)": dx, "ds(Y)": dy},
                    f"ds(X)={format_degree(dx)} > ds(Y)={format_degree(dy)}",
                )
            )
    return CheckReport(r.schema, fd, "fd", None, None, not bad, bad, trace)


def _graded_implication(
    r: RelationInstance,
    x: frozenset,
    y: frozenset,
    note: str = "",
) -> tuple[list[PairRecord], list[Counterexample]]:
    """Pairwise check of ds(X) <= ds(Y) => ds(X) <= ds(Z) with Z = R - X - Y."""
    z = frozenset(r.names) - x - y
    roles = _roles(r.schema, X=x, Y=y, Z=z)
    trace: list[PairRecord] = []
    bad: list[Counterexample] = []
    for i, j in combinations(range(len(r.tuples)), 2):
        dx = ds_tuple(r.schema, r.tuples[i], r.tuples[j], x)
        dy = ds_tuple(r.schema, r.tuples[i], r.tuples[j], y)
        dz = ds_tuple(r.schema, r.tuples[i], r.tuples[j], z)
        ok = dx > dy or dx <= dz
        degrees = {"ds(X)": dx, "ds(Y)": dy, "ds(Z)": dz}
        trace.append(PairRecord((i, j), degrees, ok, note))
        if not ok:
            reason = (
                f"ds(X)={format_degree(dx)} <= ds(Y)={format_degree(dy)}"
                f" but ds(X) > ds(Z)={format_degree(dz)}"
            )
            if note:
                reason = f"{note}: {reason}"
            bad.append(Counterexample((i, j), roles, degrees, reason))
    return trace, bad


def check_fmvd(
    r: RelationInstance, mvd: MultivaluedDep, mode: str = "witness"
) -> CheckReport:
    """Graded multivalued dependency check in the requested mode."""
    if mode not in MVD_MODES:
        raise ValueError(f"unknown MVD mode {mode!r}")
    x = r.schema.subset(mvd.lhs)
    y = r.schema.subset(mvd.rhs)
    z = frozenset(r.names) - x - y
    if mode == "paper":
        trace, bad = _graded_implication(r, x, y)
        return CheckReport(r.schema, mvd, "mvd", mode, None, not bad, bad, trace)

    trace = []
    bad = []
    n = len(r.tuples)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            t1, t2 = r.tuples[i], r.tuples[j]
            beta = ds_tuple(r.schema, t1, t2, x)
            witness = None
            for k, t3 in enumerate(r.tuples):
                if (
                    ds_tuple(r.schema, t3, t1, x) >= beta
                    and ds_tuple(r.schema, t3, t2, x) >= beta
                    and ds_tuple(r.schema, t3, t1, y) >= beta
                    and ds_tuple(r.schema, t3, t2, z) >= beta
                ):
                    witness = k
                    break
            found = witness is not None
            note = f"witness tuple {witness}" if found else "no witness tuple"
            trace.append(PairRecord((i, j), {"beta": beta}, found, note))
            if not found:
                bad.append(
                    Counterexample(
                        (i, j),
                        _roles(r.schema, X=x, Y=y, Z=z),
                        {"beta": beta},
                        f"no tuple is {format_degree(beta)}-similar to tuple {i}"
                        f" on X and Y and to tuple {j} on X and Z",
                    )
                )
    return CheckReport(r.schema, mvd, "mvd", mode, None, not bad, bad, trace)


def _validate_jd(schema: Schema, jd: JoinDep) -> None:
    union = frozenset()
    for component in jd.components:
        union |= schema.subset(component)
    if union != frozenset(schema.names):
        missing = render_attrs(frozenset(schema.names) - union, schema)
        raise SchemaError(f"join dependency components do not cover {missing}")


@dataclass
class Reconstruction:
    """Project-join-compare evidence for one component list."""

    joined: RelationInstance
    trace: list[PairRecord]
    counterexamples: list[Counterexample]
    holds: bool


def _best_cover(r: RelationInstance, t: Row) -> tuple[Degree, Optional[int]]:
    everything = frozenset(r.names)
    best, best_at = ZERO, None
    for k, row in enumerate(r.tuples):
        d = ds_tuple(r.schema, t, row, everything)
        if best_at is None or d > best:
            best, best_at = d, k
    return best, best_at


def _reconstruct(
    r: RelationInstance, components: Sequence[frozenset], alpha: Degree
) -> Reconstruction:
    joined = project(r, components[0])
    for component in components[1:]:
        joined = fuzzy_join(joined, project(r, component), alpha)
    order = [joined.schema.index_of(name) for name in r.names]
    aligned = RelationInstance(
        r.schema, tuple(tuple(row[i] for i in order) for row in joined.tuples)
    )

    trace: list[PairRecord] = []
    bad: list[Counterexample] = []
    for i, row in enumerate(r.tuples):
        best, best_at = _best_cover(aligned, row)
        ok = best >= alpha
        partner = (i,) if best_at is None else (i, best_at)
        trace.append(PairRecord(partner, {"best_ds": best}, ok, "original vs join"))
        if not ok:
            bad.append(
                Counterexample(
                    (i,),
                    {},
                    {"best_ds": best},
                    f"original tuple {i} is not covered by the join"
                    f" (best ds {format_degree(best)})",
                )
            )
    for j, row in enumerate(aligned.tuples):
        best, best_at = _best_cover(r, row)
        ok = best >= alpha
        partner = (j,) if best_at is None else (j, best_at)
        trace.append(
            PairRecord(partner, {"best_ds": best}, ok, "join vs original", row)
        )
        if not ok:
            bad.append(
                Counterexample(
                    (),
                    {},
                    {"best_ds": best},
                    f"joined tuple ({', '.join(format_value(v) for v in row)})"
                    f" is not covered by the instance (best ds {format_degree(best)})",
                    row,
                )
            )
    return Reconstruction(aligned, trace, bad, not bad)


def check_fjd(
    r: RelationInstance,
    jd: JoinDep,
    alpha: Degree = ONE,
    mode: str = "reconstruction",
) -> CheckReport:
    """Graded join dependency check in the requested mode."""
    if mode not in JD_MODES:
        raise ValueError(f"unknown JD mode {mode!r}")
    _validate_jd(r.schema, jd)

    if mode == "reconstruction":
        check_alpha(alpha)
        rec = _reconstruct(r, jd.components, alpha)
        return CheckReport(
            r.schema, jd, "jd", mode, alpha, rec.holds, rec.counterexamples, rec.trace
        )

    trace: list[PairRecord] = []
    bad: list[Counterexample] = []
    for a, b in combinations(range(len(jd.components)), 2):
        x = jd.components[a] & jd.components[b]
        y = jd.components[a] - jd.components[b]
        note = f"components ({a + 1},{b + 1})"
        if not x:
            note += ", empty determinant"
        pair_trace, pair_bad = _graded_implication(r, x, y, note)
        trace.extend(pair_trace)
        bad.extend(pair_bad)
    return CheckReport(r.schema, jd, "jd", mode, None, not bad, bad, trace)


def check_dependency(
    r: RelationInstance,
    dep: Dependency,
    alpha: Degree = ONE,
    mvd_mode: str = "witness",
    jd_mode: str = "reconstruction",
) -> CheckReport:
    """Dispatch a dependency to the matching checker."""
    if isinstance(dep, FunctionalDep):
        return check_ffd(r, dep)
    if isinstance(dep, MultivaluedDep):
        return check_fmvd(r, dep, mvd_mode)
    return check_fjd(r, dep, alpha, jd_mode)


def _superkey_failure(
    r: RelationInstance, attrs: frozenset
) -> Optional[Counterexample]:
    """First tuple pair with ds(attrs) > ds(rest), or None when attrs is an
    instance-level superkey.  Tolerates an empty attribute set (ds = 1)."""
    x = r.schema.subset(attrs)
    rest = frozenset(r.names) - x
    for i, j in combinations(range(len(r.tuples)), 2):
        dx = ds_tuple(r.schema, r.tuples[i], r.tuples[j], x)
        drest = ds_tuple(r.schema, r.tuples[i], r.tuples[j], rest)
        if dx > drest:
            return Counterexample(
                (i, j),
                _roles(r.schema, X=x, rest=rest),
                {"ds(X)": dx, "ds(rest)": drest},
                f"ds(X)={format_degree(dx)} > ds(rest)={format_degree(drest)}",
            )
    return None


def is_superkey(r: RelationInstance, attrs: Iterable[str]) -> bool:
    """True when the graded FD attrs -> (all attributes) holds."""
    x = r.schema.subset(attrs)
    if not x:
        raise SchemaError("superkey test needs a nonempty attribute set")
    return check_ffd(r, FunctionalDep(x, frozenset(r.names))).holds


def candidate_keys(r: RelationInstance) -> list[tuple[str, ...]]:
    """All subset-minimal superkeys, smallest first, then schema order."""
    names = r.names
    minimal: list[frozenset] = []
    ordered: list[tuple[str, ...]] = []
    for size in range(1, len(names) + 1):
        for combo in combinations(range(len(names)), size):
            attrs = frozenset(names[i] for i in combo)
            if any(key <= attrs for key in minimal):
                continue
            if _superkey_failure(r, attrs) is None:
                minimal.append(attrs)
                ordered.append(tuple(names[i] for i in combo))
    return ordered


@dataclass
class KeyViolation:
    """A component or determinant of a holding join dependency that fails
    the superkey test."""

    role: str
    attrs: tuple[str, ...]
    witness: Optional[Counterexample]


@dataclass
class JdAssessment:
    jd: JoinDep
    holds_in_instance: bool
    trivial: bool
    violations: list[KeyViolation]
    report: CheckReport


@dataclass
class NormalFormReport:
    schema: Schema
    rule: str
    holds: bool
    jds: list[JdAssessment]
    dep_reports: list[CheckReport]
    keys: list[tuple[str, ...]]


def is_5nf(
    r: RelationInstance, deps: Sequence[Dependency], rule: str = "component"
) -> NormalFormReport:
    """Test the declared dependencies against the keyed-join-dependency form.

    Only join dependencies that actually hold in the instance (reconstruction
    at alpha = 1) and are nontrivial drive the verdict; declared FDs and MVDs
    are checked and reported for context.  ``component`` demands every
    component be a superkey; ``determinant`` demands every pairwise component
    intersection be one.
    """
    if rule not in NF_RULES:
        raise ValueError(f"unknown 5NF rule {rule!r}")
    full = frozenset(r.names)
    jds: list[JdAssessment] = []
    other: list[CheckReport] = []
    holds = True
    for dep in deps:
        if not isinstance(dep, JoinDep):
            other.append(check_dependency(r, dep))
            continue
        report = check_fjd(r, dep, ONE, "reconstruction")
        trivial = any(frozenset(c) == full for c in dep.components)
        violations: list[KeyViolation] = []
        if report.holds and not trivial:
            if rule == "component":
                tested = [("component", c) for c in dep.components]
            else:
                tested = [
                    ("determinant", a & b)
                    for a, b in combinations(dep.components, 2)
                ]
            for role, attrs in tested:
                failure = _superkey_failure(r, attrs)
                if failure is not None:
                    violations.append(
                        KeyViolation(role, r.schema.ordered(attrs), failure)
                    )
        if violations:
            holds = False
        jds.append(JdAssessment(dep, report.holds, trivial, violations, report))
    return NormalFormReport(r.schema, rule, holds, jds, other, candidate_keys(r))


def lossless_evidence(
    r: RelationInstance, components: Sequence[frozenset], alpha: Degree = ONE
) -> Reconstruction:
    """Project-join-compare evidence for an arbitrary schema cover."""
    check_alpha(alpha)
    union = frozenset()
    for component in components:
        union |= r.schema.subset(component)
    if union != frozenset(r.names):
        missing = render_attrs(frozenset(r.names) - union, r.schema)
        raise SchemaError(f"components do not cover the schema, missing {missing}")
    return _reconstruct(r, components, alpha)


def verify_lossless(
    r: RelationInstance, components: Sequence[frozenset], alpha: Degree = ONE
) -> bool:
    """True when the fuzzy join of the projections and the instance cover
    each other at the given threshold."""
    return lossless_evidence(r, components, alpha).holds


@dataclass
class DecompositionNode:
    """One relation in a recursive 5NF decomposition."""

    attrs: tuple[str, ...]
    instance: RelationInstance
    applied: Optional[JoinDep]
    lossless_verified: bool
    children: list["DecompositionNode"]
    nf_report: NormalFormReport


def decompose_5nf(
    r: RelationInstance,
    deps: Sequence[Dependency],
    alpha: Degree = ONE,
    rule: str = "component",
) -> DecompositionNode:
    """Split along violating join dependencies until every leaf is in 5NF.

    The violating JD with the most components wins (declaration order breaks
    ties); dependencies are inherited by a child only when all their
    attributes fall inside it.  Every split node records whether its own
    project-join reconstruction at ``alpha`` is lossless.
    """
    check_alpha(alpha)
    nf = is_5nf(r, deps, rule)
    violating = [a for a in nf.jds if a.violations]
    if not violating:
        return DecompositionNode(r.names, r, None, True, [], nf)
    chosen = violating[0]
    for assessment in violating[1:]:
        if len(assessment.jd.components) > len(chosen.jd.components):
            chosen = assessment
    jd = chosen.jd
    verified = verify_lossless(r, jd.components, alpha)
    children = []
    for component in jd.components:
        child = project(r, component)
        child_attrs = frozenset(child.names)
        child_deps = [d for d in deps if _inherited(d, child_attrs)]
        children.append(decompose_5nf(child, child_deps, alpha, rule))
    return DecompositionNode(r.names, r, jd, verified, children, nf)


def _inherited(dep: Dependency, attrs: frozenset) -> bool:
    if isinstance(dep, JoinDep):
        return frozenset().union(*dep.components) == attrs
    return (dep.lhs | dep.rhs) <= attrs


def tree_nodes(node: DecompositionNode) -> Iterable[DecompositionNode]:
    """Depth-first iteration over a decomposition tree."""
    yield node
    for child in node.children:
        yield from tree_nodes(child)
