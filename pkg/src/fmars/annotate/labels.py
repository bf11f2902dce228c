"""Class taxonomy with stable integer codes shared across all artifacts."""
from __future__ import annotations

from enum import IntEnum


class ClassLabel(IntEnum):
    BACKGROUND = 0
    ROADS = 1
    HIGH_VEGETATION = 2
    BUILDINGS = 3


CLASS_NAMES = {
    ClassLabel.BACKGROUND: "background",
    ClassLabel.ROADS: "roads",
    ClassLabel.HIGH_VEGETATION: "high_vegetation",
    ClassLabel.BUILDINGS: "buildings",
}

NAME_TO_CLASS = {name: label for label, name in CLASS_NAMES.items()}

# Paint order for semantic rendering, least to most dominant. Trees overhang
# roads and buildings in nadir imagery, and infrastructure is the assessment
# target, so buildings win over roads win over vegetation.
SEMANTIC_PRECEDENCE = (
    ClassLabel.HIGH_VEGETATION,
    ClassLabel.ROADS,
    ClassLabel.BUILDINGS,
)

ANNOTATED_CLASSES = (ClassLabel.ROADS, ClassLabel.HIGH_VEGETATION, ClassLabel.BUILDINGS)
