import pytest

from fmars.annotate import ClassLabel, InstanceAnnotation, dedupe_across_tiles
from fmars.annotate.instances import PROVENANCE_FOOTPRINT, PROVENANCE_ROAD
from fmars.geometry import PolygonGeometry
from fmars.synthetic import square_ring


def make(cx, cy, side, confidence, tile, label=ClassLabel.BUILDINGS):
    provenance = PROVENANCE_ROAD if label == ClassLabel.ROADS else PROVENANCE_FOOTPRINT
    return InstanceAnnotation(
        geometry=PolygonGeometry(square_ring(cx, cy, side), space="world"),
        label=label,
        confidence=confidence,
        provenance=provenance,
        source_tile=tile,
    )


def test_cross_tile_duplicate_keeps_higher_confidence():
    a = make(10, 10, 8, 0.9, tile=0)
    b = make(10.5, 10, 8, 0.8, tile=1)  # IoU well above 0.5
    kept = dedupe_across_tiles([a, b])
    assert kept == [a]
    kept = dedupe_across_tiles([b, a])
    assert kept == [a]


def test_disjoint_instances_unchanged():
    a = make(10, 10, 8, 0.9, tile=0)
    b = make(100, 100, 8, 0.8, tile=1)
    assert dedupe_across_tiles([a, b]) == [a, b]


def test_confidence_tie_keeps_lower_tile_index():
    a = make(10, 10, 8, 0.9, tile=3)
    b = make(10, 10, 8, 0.9, tile=1)
    kept = dedupe_across_tiles([a, b])
    assert kept == [b]


def test_same_tile_overlaps_never_suppressed():
    a = make(10, 10, 8, 0.9, tile=0)
    b = make(10, 10, 8, 0.8, tile=0)
    assert dedupe_across_tiles([a, b]) == [a, b]


def test_different_classes_never_suppressed():
    a = make(10, 10, 8, 0.9, tile=0, label=ClassLabel.BUILDINGS)
    b = make(10, 10, 8, 0.8, tile=1, label=ClassLabel.ROADS)
    assert dedupe_across_tiles([a, b]) == [a, b]


def test_low_overlap_not_suppressed():
    a = make(10, 10, 8, 0.9, tile=0)
    b = make(16, 10, 8, 0.8, tile=1)  # IoU = 16/112 < 0.5
    assert dedupe_across_tiles([a, b]) == [a, b]


def test_untiled_instances_exempt():
    a = make(10, 10, 8, 1.0, tile=None, label=ClassLabel.ROADS)
    b = make(10, 10, 8, 1.0, tile=None, label=ClassLabel.ROADS)
    assert dedupe_across_tiles([a, b]) == [a, b]


def test_chain_of_duplicates_collapses_to_best():
    instances = [make(10 + 0.2 * i, 10, 8, 0.5 + 0.1 * i, tile=i) for i in range(4)]
    kept = dedupe_across_tiles(instances)
    assert len(kept) == 1
    assert kept[0].confidence == pytest.approx(0.8)
