"""The bundled supply example and its published similarity tables.

The supply instance ships with the package because it reproduces a published
worked example whose printed similarity tables disagree with the directed
set-overlap formula on several entries (the printed values look Jaccard-like
in places and nonzero for disjoint sets).  Whenever a similarity matrix is
computed for this exact instance, the divergent printed entries are surfaced
as report notes instead of being silently recomputed away.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from .relation import RelationInstance, SimilarityMatrix
from .similarity import Degree


def supply_path() -> Path:
    return Path(str(files("fuzzy5nf").joinpath("data/supply.csv")))


def supply_deps_path() -> Path:
    return Path(str(files("fuzzy5nf").joinpath("data/supply.deps")))


@lru_cache(maxsize=1)
def bundled_supply() -> RelationInstance:
    from .parsing import parse_relation

    return parse_relation(supply_path().read_text(encoding="utf-8"))


def _s(*labels: str) -> frozenset:
    return frozenset(labels)


_P12, _P13, _P2 = _s("P1", "P2"), _s("P1", "P3"), _s("P2")
_PXY, _PZ = _s("ProjX", "ProjY"), _s("ProjZ")

# Degrees exactly as printed in the published tables, keyed (row, column)
# over the distinct column values.  Note the printed part_name table is not
# even symmetric (0.34 above the diagonal vs 0.5 below for the same pair).
PUBLISHED_SIMILARITY = {
    "part_name": {
        (_P12, _P12): "1",
        (_P12, _P13): "0.34",
        (_P12, _P2): "0",
        (_P13, _P12): "0.34",
        (_P13, _P13): "1",
        (_P13, _P2): "0.34",
        (_P2, _P12): "0",
        (_P2, _P13): "0.5",
        (_P2, _P2): "1",
    },
    "project_name": {
        (_PXY, _PXY): "1",
        (_PXY, _PZ): "0.33",
        (_PZ, _PXY): "0.7",
        (_PZ, _PZ): "1",
    },
}


@dataclass
class DivergenceNote:
    """A printed degree that the set-overlap formula contradicts."""

    attribute: str
    row_value: frozenset
    col_value: frozenset
    published: str
    computed: Degree


def is_bundled_supply(r: RelationInstance) -> bool:
    supply = bundled_supply()
    return r.schema == supply.schema and set(r.tuples) == set(supply.tuples)


def divergence_notes(r: RelationInstance, matrix: SimilarityMatrix) -> list[DivergenceNote]:
    """Published-vs-computed mismatches for a matrix over the bundled supply
    instance; empty for any other input."""
    if not is_bundled_supply(r):
        return []
    table = PUBLISHED_SIMILARITY.get(matrix.attribute)
    if table is None:
        return []
    notes = []
    for i, row_value in enumerate(matrix.values):
        for j, col_value in enumerate(matrix.values):
            printed = table.get((row_value, col_value))
            if printed is None:
                continue
            if Fraction(printed) != matrix.entries[i][j]:
                notes.append(
                    DivergenceNote(
                        matrix.attribute,
                        row_value,
                        col_value,
                        printed,
                        matrix.entries[i][j],
                    )
                )
    return notes
