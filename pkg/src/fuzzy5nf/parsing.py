"""Text formats: the relation file, the dependency DSL, and a canonical writer.

Relation files are comma-delimited with a `name:kind` header (kinds: atom,
set); set cells hold `;`-separated labels.  Dependency scripts hold one
declaration per line::

    FD  supplier_name -> part_name
    MVD part_name ->> project_name
    JD  (supplier_name,part_name),(supplier_name,project_name),(part_name,project_name)

`#` starts a comment, blank lines are ignored.  All errors carry a 1-based
line and, where determinable, column.
"""

from fractions import Fraction
from typing import Optional

from .dependencies import Dependency, FunctionalDep, JoinDep, MultivaluedDep
from .relation import (
    ATOM,
    KINDS,
    AttributeDef,
    RelationInstance,
    Row,
    Schema,
    valid_identifier,
)
from .similarity import validate_label


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def _parse_header(cells: list[str], lineno: int) -> Schema:
    defs = []
    seen = set()
    for col, cell in enumerate(cells, 1):
        name, colon, kind = cell.strip().partition(":")
        if not colon:
            raise ParseError(f"expected name:kind, got {cell.strip()!r}", lineno, col)
        kind = kind.strip()
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r} (expected atom or set)", lineno, col)
        name = name.strip()
        if name in seen:
            raise ParseError(f"duplicate attribute name {name!r}", lineno, col)
        seen.add(name)
        try:
            defs.append(AttributeDef(name, kind))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from exc
    return Schema(tuple(defs))


def _parse_cell(cell: str, kind: str, lineno: int, col: int):
    text = cell.strip()
    if kind == ATOM:
        try:
            return validate_label(text)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from exc
    if not text:
        raise ParseError("empty set cell", lineno, col)
    labels = set()
    for piece in text.split(";"):
        try:
            labels.add(validate_label(piece.strip()))
        except ValueError as exc:
            raise ParseError(f"{exc} in set cell", lineno, col) from exc
    return frozenset(labels)


def parse_relation(text: str) -> RelationInstance:
    """Parse a relation file into an instance; duplicate rows are an error."""
    schema = None
    rows: list[Row] = []
    first_seen: dict[Row, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        cells = raw.split(",")
        if schema is None:
            schema = _parse_header(cells, lineno)
            continue
        if len(cells) != len(schema.attributes):
            raise ParseError(
                f"expected {len(schema.attributes)} cells, got {len(cells)}", lineno
            )
        row = tuple(
            _parse_cell(cell, attr.kind, lineno, col)
            for col, (attr, cell) in enumerate(zip(schema.attributes, cells), 1)
        )
        if row in first_seen:
            raise ParseError(
                f"duplicate tuple (first occurrence at line {first_seen[row]})", lineno
            )
        first_seen[row] = lineno
        rows.append(row)
    if schema is None:
        raise ParseError("empty relation file", 1)
    return RelationInstance(schema, tuple(rows))


def render_relation(r: RelationInstance) -> str:
    """Canonical writer; `parse_relation(render_relation(r))` returns `r`."""
    lines = [",".join(f"{a.name}:{a.kind}" for a in r.schema.attributes)]
    for row in r.tuples:
        cells = []
        for attr, value in zip(r.schema.attributes, row):
            cells.append(value if attr.kind == ATOM else ";".join(sorted(value)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _attr_list(text: str, lineno: int, offset: int) -> frozenset:
    names = set()
    cursor = offset
    for piece in text.split(","):
        name = piece.strip()
        col = cursor + piece.index(name) + 1 if name else cursor + 1
        if not name:
            raise ParseError("empty attribute name", lineno, col)
        if not valid_identifier(name):
            raise ParseError(f"invalid attribute name {name!r}", lineno, col)
        names.add(name)
        cursor += len(piece) + 1
    return frozenset(names)


def _component_list(text: str, lineno: int, offset: int) -> list[frozenset]:
    components = []
    i = 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            raise ParseError("expected '('", lineno, offset + i + 1)
        if text[i] != "(":
            raise ParseError(f"expected '(', got {text[i]!r}", lineno, offset + i + 1)
        close = text.find(")", i)
        if close < 0:
            raise ParseError("unclosed '('", lineno, offset + i + 1)
        components.append(_attr_list(text[i + 1 : close], lineno, offset + i + 1))
        i = close + 1
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            break
        if text[i] != ",":
            raise ParseError(
                f"expected ',' between components, got {text[i]!r}",
                lineno,
                offset + i + 1,
            )
        i += 1
    return components


def parse_components(text: str, lineno: int = 1, offset: int = 0) -> list[frozenset]:
    """Parse a component list such as `(a,b),(b,c)`."""
    return _component_list(text, lineno, offset)


def _parse_dep_line(line: str, lineno: int) -> Dependency:
    stripped = line.lstrip()
    indent = len(line) - len(stripped)
    keyword, _, rest = stripped.partition(" ")
    rest_offset = indent + len(keyword) + 1
    if keyword == "FD":
        lhs_text, arrow, rhs_text = rest.partition("->")
        if not arrow or rhs_text.startswith(">"):
            raise ParseError("expected '->' with attribute lists on both sides", lineno)
        lhs = _attr_list(lhs_text, lineno, rest_offset)
        rhs = _attr_list(rhs_text, lineno, rest_offset + len(lhs_text) + 2)
        return FunctionalDep(lhs, rhs)
    if keyword == "MVD":
        lhs_text, arrow, rhs_text = rest.partition("->>")
        if not arrow:
            raise ParseError("expected '->>' with attribute lists on both sides", lineno)
        lhs = _attr_list(lhs_text, lineno, rest_offset)
        rhs = _attr_list(rhs_text, lineno, rest_offset + len(lhs_text) + 3)
        return MultivaluedDep(lhs, rhs)
    if keyword == "JD":
        components = _component_list(rest, lineno, rest_offset)
        if len(components) < 2:
            raise ParseError("join dependency needs at least two components", lineno)
        return JoinDep(tuple(components))
    raise ParseError(
        f"expected FD, MVD or JD declaration, got {keyword!r}", lineno, indent + 1
    )


def parse_deps(text: str) -> list[Dependency]:
    """Parse a dependency script into declarations, in order."""
    deps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        deps.append(_parse_dep_line(line, lineno))
    return deps


def parse_alpha(text: str) -> Fraction:
    """Accept `p/q` or a decimal string, parsed exactly; must land in [0, 1]."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid alpha {text!r}") from exc
    if not 0 <= value <= 1:
        raise ParseError(f"alpha must be within [0, 1], got {text.strip()}")
    return value
