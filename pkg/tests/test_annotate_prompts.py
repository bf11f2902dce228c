import math

import numpy as np
import pytest

from fmars.annotate import footprints_to_prompts, roads_to_instances, ClassLabel
from fmars.annotate.instances import PROVENANCE_ROAD
from fmars.geometry import PixelBox, PolygonGeometry
from fmars.ingest import FootprintSet, RoadGraph
from fmars.synthetic import north_up_transform, square_ring

T = north_up_transform(origin_x=430000.0, origin_y=4580000.0, resolution_m=0.3)
FULL_TILE = PixelBox(0, 0, 1024, 1024)


def footprint_set(*rings):
    fp = FootprintSet()
    for ring in rings:
        fp.features.append(PolygonGeometry(ring, space="world"))
        fp.source_ids.append(len(fp.source_ids))
    return fp


def test_square_footprint_box_size_from_transform():
    # 10 m x 10 m at 0.3 m/px: 33.33 px per side
    fp = footprint_set(square_ring(430050.0, 4579950.0, 10.0))
    boxes = footprints_to_prompts(fp, T, FULL_TILE)
    assert len(boxes) == 1
    box = boxes[0]
    assert box.width == pytest.approx(10.0 / 0.3)
    assert box.height == pytest.approx(10.0 / 0.3)
    # position: (430045 - 430000) / 0.3 = 150 px
    assert box.x0 == pytest.approx(150.0)
    assert box.y0 == pytest.approx((4580000.0 - 4579955.0) / 0.3)


def test_centroid_outside_tile_not_prompted():
    fp = footprint_set(square_ring(430050.0, 4579950.0, 10.0))
    left_half = PixelBox(0, 0, 100, 1024)  # centroid is at col 166.67
    assert footprints_to_prompts(fp, T, left_half) == []


def test_centroid_rule_assigns_to_exactly_one_tile():
    fp = footprint_set(square_ring(430050.0, 4579950.0, 10.0))
    tiles = [PixelBox(0, 0, 512, 512), PixelBox(0, 512, 512, 1024),
             PixelBox(512, 0, 1024, 512), PixelBox(512, 512, 1024, 1024)]
    hits = [t for t in tiles if footprints_to_prompts(fp, T, t)]
    assert len(hits) == 1


def test_rotated_square_aabb_contains_footprint():
    cx, cy, half = 430100.0, 4579900.0, 6.0
    rotated = [
        (cx + half, cy),
        (cx, cy + half),
        (cx - half, cy),
        (cx, cy - half),
        (cx + half, cy),
    ]
    fp = footprint_set(rotated)
    boxes = footprints_to_prompts(fp, T, FULL_TILE)
    assert len(boxes) == 1
    box = boxes[0]
    footprint_area_m2 = 2 * half * half
    box_area_m2 = box.area * 0.3 * 0.3
    assert box_area_m2 >= footprint_area_m2
    assert box.width == pytest.approx(2 * half / 0.3)


def test_boxes_are_tile_local_and_clamped():
    fp = footprint_set(square_ring(430002.0, 4579998.0, 20.0))  # pokes past the edge
    boxes = footprints_to_prompts(fp, T, FULL_TILE)
    assert len(boxes) == 1
    assert boxes[0].x0 == 0.0 and boxes[0].y0 == 0.0


def test_road_capsule_area_and_metadata():
    rg = RoadGraph(polylines=[np.array([(0.0, 0.0), (100.0, 0.0)])])
    instances = roads_to_instances(rg, radius_m=5.0)
    assert len(instances) == 1
    inst = instances[0]
    assert inst.label == ClassLabel.ROADS
    assert inst.confidence == 1.0
    assert inst.provenance == PROVENANCE_ROAD
    assert inst.source_tile is None
    analytic = 100.0 * 10.0 + math.pi * 25.0
    assert inst.geometry.area == pytest.approx(analytic, rel=0.01)


def test_default_radius_is_five_meters():
    import inspect

    from fmars.annotate import roads_to_instances as fn

    assert inspect.signature(fn).parameters["radius_m"].default == 5.0


def test_empty_graph_gives_no_instances():
    assert roads_to_instances(RoadGraph()) == []


def test_crossing_roads_stay_separate_instances():
    rg = RoadGraph(
        polylines=[
            np.array([(0.0, 0.0), (100.0, 0.0)]),
            np.array([(50.0, -50.0), (50.0, 50.0)]),
        ]
    )
    instances = roads_to_instances(rg, radius_m=5.0)
    assert len(instances) == 2


def test_bad_radius_rejected():
    rg = RoadGraph(polylines=[np.array([(0.0, 0.0), (1.0, 0.0)])])
    with pytest.raises(ValueError):
        roads_to_instances(rg, radius_m=0.0)
