"""Dependency declarations: functional, multivalued, and join dependencies.

Attribute sets are frozensets of attribute names; they are resolved against a
concrete schema only when a dependency is checked.
"""

from dataclasses import dataclass
from typing import Union

from .relation import Schema


@dataclass(frozen=True)
class FunctionalDep:
    lhs: frozenset
    rhs: frozenset

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("functional dependency needs a nonempty left side")


@dataclass(frozen=True)
class MultivaluedDep:
    lhs: frozenset
    rhs: frozenset

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("multivalued dependency needs a nonempty left side")


@dataclass(frozen=True)
class JoinDep:
    components: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.components) < 2:
            raise ValueError("join dependency needs at least two components")
        if any(not c for c in self.components):
            raise ValueError("join dependency components must be nonempty")


Dependency = Union[FunctionalDep, MultivaluedDep, JoinDep]


def dep_attributes(dep: Dependency) -> frozenset:
    """Every attribute name the dependency mentions."""
    if isinstance(dep, JoinDep):
        return frozenset().union(*dep.components)
    return dep.lhs | dep.rhs


def render_attrs(names, schema: Schema = None) -> str:
    """'{a,b}' with names in schema order, or sorted without a schema."""
    ordered = schema.ordered(names) if schema is not None else tuple(sorted(names))
    return "{" + ",".join(ordered) + "}"


def render_dep(dep: Dependency, schema: Schema = None) -> str:
    """Canonical declaration syntax, e.g. 'FD a,b -> c'."""

    def attr_list(names):
        ordered = schema.ordered(names) if schema is not None else tuple(sorted(names))
        return ",".join(ordered)

    if isinstance(dep, FunctionalDep):
        return f"FD {attr_list(dep.lhs)} -> {attr_list(dep.rhs)}"
    if isinstance(dep, MultivaluedDep):
        return f"MVD {attr_list(dep.lhs)} ->> {attr_list(dep.rhs)}"
    return "JD " + ",".join(f"({attr_list(c)})" for c in dep.components)
