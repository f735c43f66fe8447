"""Schemas, relation instances, tuple similarity, projection, and fuzzy join.

Instances are immutable and duplicate-free under exact equality.  Tuple order
is preserved for reporting, but every operation here is order-independent in
its semantics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .similarity import (
    ONE,
    AttributeValue,
    Degree,
    ds_value,
    validate_label,
)

ATOM = "atom"
SET = "set"
KINDS = (ATOM, SET)

_IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Row = tuple


def valid_identifier(name: str) -> bool:
    return bool(_IDENTIFIER_RE.match(name))


class SchemaError(ValueError):
    """Names, kinds, arities, or tuple invariants do not line up."""


@dataclass(frozen=True)
class AttributeDef:
    name: str
    kind: str

    def __post_init__(self):
        if not _IDENTIFIER_RE.match(self.name or ""):
            raise SchemaError(f"invalid attribute name {self.name!r}")
        if self.kind not in KINDS:
            raise SchemaError(f"unknown attribute kind {self.kind!r}")


@dataclass(frozen=True)
class Schema:
    attributes: tuple[AttributeDef, ...]

    def __post_init__(self):
        if not self.attributes:
            raise SchemaError("a schema needs at least one attribute")
        seen = set()
        for attr in self.attributes:
            if attr.name in seen:
                raise SchemaError(f"duplicate attribute name {attr.name!r}")
            seen.add(attr.name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(attr.name for attr in self.attributes)

    def index_of(self, name: str) -> int:
        for i, attr in enumerate(self.attributes):
            if attr.name == name:
                return i
        raise SchemaError(f"unknown attribute {name!r}")

    def kind_of(self, name: str) -> str:
        return self.attributes[self.index_of(name)].kind

    def subset(self, names: Iterable[str]) -> frozenset:
        """Validate a collection of attribute names against this schema."""
        subset = frozenset(names)
        for name in subset:
            self.index_of(name)
        return subset

    def ordered(self, names: Iterable[str]) -> tuple[str, ...]:
        """The given names in schema order (validating membership)."""
        subset = self.subset(names)
        return tuple(n for n in self.names if n in subset)


def _validate_row(schema: Schema, row: Row) -> None:
    if len(row) != len(schema.attributes):
        raise SchemaError(
            f"tuple has {len(row)} values, schema has {len(schema.attributes)}"
        )
    for attr, value in zip(schema.attributes, row):
        if attr.kind == ATOM:
            if isinstance(value, frozenset):
                raise SchemaError(f"attribute {attr.name!r} expects an atom")
            validate_label(value)
        else:
            if not isinstance(value, frozenset) or not value:
                raise SchemaError(f"attribute {attr.name!r} expects a nonempty set")
            for label in value:
                validate_label(label)


@dataclass(frozen=True)
class RelationInstance:
    schema: Schema
    tuples: tuple[Row, ...]

    def __post_init__(self):
        seen = set()
        for row in self.tuples:
            _validate_row(self.schema, row)
            if row in seen:
                raise SchemaError(f"duplicate tuple {row!r}")
            seen.add(row)

    @property
    def names(self) -> tuple[str, ...]:
        return self.schema.names

    def column(self, name: str) -> tuple[AttributeValue, ...]:
        i = self.schema.index_of(name)
        return tuple(row[i] for row in self.tuples)


def ds_tuple(schema: Schema, t1: Row, t2: Row, attrs: Iterable[str]) -> Degree:
    """Similarity of two tuples over an attribute set: the per-attribute
    minimum, with the empty set scoring the neutral 1."""
    names = schema.subset(attrs)
    if not names:
        return ONE
    return min(
        ds_value(t1[schema.index_of(name)], t2[schema.index_of(name)])
        for name in names
    )


def project(r: RelationInstance, attrs: Iterable[str]) -> RelationInstance:
    """Restrict to the given attributes (schema order kept), deduplicating."""
    names = r.schema.subset(attrs)
    if not names:
        raise SchemaError("projection needs at least one attribute")
    keep = [i for i, attr in enumerate(r.schema.attributes) if attr.name in names]
    schema = Schema(tuple(r.schema.attributes[i] for i in keep))
    seen = set()
    rows = []
    for row in r.tuples:
        projected = tuple(row[i] for i in keep)
        if projected not in seen:
            seen.add(projected)
            rows.append(projected)
    return RelationInstance(schema, tuple(rows))


def fuzzy_join(r1: RelationInstance, r2: RelationInstance, alpha: Degree) -> RelationInstance:
    """Similarity-thresholded natural join.

    Tuple pairs whose similarity over the shared attributes reaches ``alpha``
    are merged: unshared attributes are copied through, shared set-valued
    attributes take the union of the two sides, and shared atoms take the
    left value (at alpha = 1 similarity forces equality, so this is exactly
    the classical natural join).  With no shared attributes every pair joins.
    """
    check_alpha(alpha)
    names1 = set(r1.names)
    shared = [name for name in r2.names if name in names1]
    for name in shared:
        if r1.schema.kind_of(name) != r2.schema.kind_of(name):
            raise SchemaError(f"shared attribute {name!r} has mismatched kinds")
    extra = [attr for attr in r2.schema.attributes if attr.name not in names1]
    schema = Schema(r1.schema.attributes + tuple(extra))

    idx1 = {name: r1.schema.index_of(name) for name in r1.names}
    idx2 = {name: r2.schema.index_of(name) for name in r2.names}
    seen = set()
    rows = []
    for t1 in r1.tuples:
        for t2 in r2.tuples:
            if shared:
                beta = min(ds_value(t1[idx1[n]], t2[idx2[n]]) for n in shared)
            else:
                beta = ONE
            if beta < alpha:
                continue
            merged = []
            for attr in schema.attributes:
                if attr.name not in idx2:
                    merged.append(t1[idx1[attr.name]])
                elif attr.name not in idx1:
                    merged.append(t2[idx2[attr.name]])
                elif attr.kind == SET:
                    merged.append(t1[idx1[attr.name]] | t2[idx2[attr.name]])
                else:
                    merged.append(t1[idx1[attr.name]])
            row = tuple(merged)
            if row not in seen:
                seen.add(row)
                rows.append(row)
    return RelationInstance(schema, tuple(rows))


def covers(r: RelationInstance, t: Row, alpha: Degree) -> bool:
    """True when some stored tuple is at least alpha-similar to ``t`` on
    every attribute."""
    check_alpha(alpha)
    _validate_row(r.schema, t)
    everything = frozenset(r.names)
    return any(ds_tuple(r.schema, t, row, everything) >= alpha for row in r.tuples)


@dataclass(frozen=True)
class SimilarityMatrix:
    """Pairwise similarity of the distinct values of one column."""

    attribute: str
    values: tuple[AttributeValue, ...]
    entries: tuple[tuple[Degree, ...], ...]

    def __post_init__(self):
        n = len(self.values)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("similarity matrix must be square")
        for i in range(n):
            if self.entries[i][i] != ONE:
                raise ValueError("similarity matrix diagonal must be 1")
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("similarity matrix must be symmetric")


def sim_matrix(r: RelationInstance, attribute: str) -> SimilarityMatrix:
    """Pairwise ds over the distinct values of a column, in first-occurrence
    order."""
    values = []
    for value in r.column(attribute):
        if value not in values:
            values.append(value)
    entries = tuple(
        tuple(ds_value(a, b) for b in values) for a in values
    )
    return SimilarityMatrix(attribute, tuple(values), entries)


def check_alpha(alpha: Degree) -> Degree:
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must be within [0, 1], got {alpha}")
    return alpha
