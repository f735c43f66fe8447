"""Exact set-overlap similarity degrees for atomic and set-valued values.

An attribute value is either an atom (a plain string label) or a nonempty
``frozenset`` of labels.  Every degree returned here is a ``Fraction`` in
[0, 1]; comparisons are always exact, and :func:`format_degree` is the only
place where rounding (to two decimals, for display) happens.
"""

from fractions import Fraction
from typing import Iterable, Union

Degree = Fraction
SetValue = frozenset
AttributeValue = Union[str, frozenset]

ZERO = Fraction(0)
ONE = Fraction(1)

LABEL_SEPARATORS = ",;"


def validate_label(text: str) -> str:
    """Check that ``text`` is usable as a label; return it unchanged."""
    if not isinstance(text, str) or not text:
        raise ValueError("empty label")
    for ch in text:
        if ch.isspace():
            raise ValueError(f"label {text!r} contains whitespace")
        if ch in LABEL_SEPARATORS:
            raise ValueError(f"label {text!r} contains separator {ch!r}")
    return text


def set_value(labels: Iterable[str]) -> frozenset:
    """Build a validated set value from an iterable of labels."""
    value = frozenset(validate_label(label) for label in labels)
    if not value:
        raise ValueError("a set value needs at least one label")
    return value


def as_set(value: AttributeValue) -> frozenset:
    """Coerce an atom to a singleton set; set values pass through."""
    if isinstance(value, frozenset):
        return value
    return frozenset((value,))


def sim_directed(x: frozenset, y: frozenset) -> Degree:
    """Directed similarity of set ``x`` toward set ``y``.

    Disjoint sets score 0 and equal sets score 1; otherwise the result is
    1 minus the share of x-exclusive elements among all non-shared elements
    of the union.  Note the measure is asymmetric: a strict subset scores 1
    toward its superset but 0 in the other direction.
    """
    if not x or not y:
        raise ValueError("directed similarity needs nonempty sets")
    shared = x & y
    if not shared:
        return ZERO
    if x == y:
        return ONE
    non_shared = (x | y) - shared
    return ONE - Fraction(len(x - shared), len(non_shared))


def ds_value(x: AttributeValue, y: AttributeValue) -> Degree:
    """Symmetric degree of similarity between two attribute values.

    Atoms are coerced to singleton sets, then the two directed similarities
    are combined by minimum.  The result is 1 exactly when the values are
    equal, and 0 whenever they share no label.
    """
    xs = as_set(x)
    ys = as_set(y)
    return min(sim_directed(xs, ys), sim_directed(ys, xs))


def format_degree(degree: Degree) -> str:
    """Render a degree with two decimals, rounding halves up: 1/3 -> '0.33'."""
    hundredths, remainder = divmod(100 * degree.numerator, degree.denominator)
    if 2 * remainder >= degree.denominator:
        hundredths += 1
    whole, cents = divmod(hundredths, 100)
    return f"{whole}.{cents:02d}"


def format_value(value: AttributeValue) -> str:
    """Render an atom bare and a set value as '{a,b}' with sorted labels."""
    if isinstance(value, frozenset):
        return "{" + ",".join(sorted(value)) + "}"
    return value
