"""Conversion of raw corpus class labels into model targets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import MissingAges, UnknownClass
from .textcore import RawLabel


@dataclass(frozen=True)
class Target:
    kind: str  # "classification" | "age_regression" | "ordered_regression"
    value: float


def as_classes(
    labels: Sequence[RawLabel],
    ordering: Optional[Sequence[str]] = None,
) -> tuple[list[int], list[str]]:
    """Map class names to ids, by ordering file or first-seen order."""
    if ordering is not None:
        order = list(ordering)
        index = {name: i for i, name in enumerate(order)}
        ids = []
        for lab in labels:
            if lab.class_name not in index:
                raise UnknownClass(lab.class_name)
            ids.append(index[lab.class_name])
        return ids, order
    order = []
    index = {}
    ids = []
    for lab in labels:
        if lab.class_name not in index:
            index[lab.class_name] = len(order)
            order.append(lab.class_name)
        ids.append(index[lab.class_name])
    return ids, order


def as_age_regression(label: RawLabel) -> float:
    """Midpoint of the label's age range."""
    if label.age_low is None or label.age_high is None:
        raise MissingAges(f"label {label.class_name!r} has no age range")
    return (label.age_low + label.age_high) / 2.0


def as_ordered_regression(
    labels: Sequence[RawLabel], difficulty_order: Sequence[str]
) -> list[int]:
    """Equidistant integer targets: position in the easiest-first order."""
    index = {name: i for i, name in enumerate(difficulty_order)}
    out = []
    for lab in labels:
        if lab.class_name not in index:
            raise UnknownClass(lab.class_name)
        out.append(index[lab.class_name])
    return out


def load_difficulty_order(path: str) -> list[str]:
    """One class name per line, easiest first."""
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]
