"""Similarity-based dependency checking and 5NF decomposition for relations
with set-valued attributes."""

from .dependencies import Dependency, FunctionalDep, JoinDep, MultivaluedDep, render_dep
from .engine import (
    CheckReport,
    DecompositionNode,
    NormalFormReport,
    candidate_keys,
    check_dependency,
    check_ffd,
    check_fjd,
    check_fmvd,
    decompose_5nf,
    is_5nf,
    is_superkey,
    lossless_evidence,
    verify_lossless,
)
from .oracle import CrispRelation, classical_fd, classical_jd, classical_mvd, oracle_diff
from .parsing import (
    ParseError,
    parse_alpha,
    parse_components,
    parse_deps,
    parse_relation,
    render_relation,
)
from .reference import bundled_supply, divergence_notes, supply_deps_path, supply_path
from .relation import (
    AttributeDef,
    RelationInstance,
    Schema,
    SchemaError,
    SimilarityMatrix,
    covers,
    ds_tuple,
    fuzzy_join,
    project,
    sim_matrix,
)
from .report import emit_report
from .similarity import ds_value, format_degree, sim_directed

__version__ = "0.1.0"

__all__ = [
    "AttributeDef",
    "CheckReport",
    "CrispRelation",
    "DecompositionNode",
    "Dependency",
    "FunctionalDep",
    "JoinDep",
    "MultivaluedDep",
    "NormalFormReport",
    "ParseError",
    "RelationInstance",
    "Schema",
    "SchemaError",
    "SimilarityMatrix",
    "bundled_supply",
    "candidate_keys",
    "check_dependency",
    "check_ffd",
    "check_fjd",
    "check_fmvd",
    "classical_fd",
    "classical_jd",
    "classical_mvd",
    "covers",
    "decompose_5nf",
    "divergence_notes",
    "ds_tuple",
    "ds_value",
    "emit_report",
    "format_degree",
    "fuzzy_join",
    "is_5nf",
    "is_superkey",
    "lossless_evidence",
    "oracle_diff",
    "parse_alpha",
    "parse_components",
    "parse_deps",
    "parse_relation",
    "project",
    "render_dep",
    "render_relation",
    "sim_directed",
    "sim_matrix",
    "supply_deps_path",
    "supply_path",
    "verify_lossless",
]
