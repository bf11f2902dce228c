"""Cross-tile duplicate suppression for overlapping annotation tiles."""
from __future__ import annotations

DEDUPE_IOU = 0.5


def polygon_iou(a, b) -> float:
    """Area IoU of two PolygonGeometry values."""
    sa, sb = a.to_shapely(), b.to_shapely()
    if not sa.intersects(sb):
        return 0.0
    inter = sa.intersection(sb).area
    union = sa.union(sb).area
    return inter / union if union > 0 else 0.0


def dedupe_across_tiles(instances, iou_threshold: float = DEDUPE_IOU) -> list:
    """Collapse duplicates of the same class coming from different tiles.

    For overlapping same-class instances from different tiles with polygon
    IoU >= threshold, the higher-confidence one survives; confidence ties
    go to the lower tile index. Instances from the same tile (or without a
    tile, e.g. roads) are never suppressed against each other.
    """
    order = sorted(
        range(len(instances)),
        key=lambda i: (
            -instances[i].confidence,
            _tile_key(instances[i].source_tile),
            i,
        ),
    )
    suppressed = set()
    kept = []
    for i in order:
        inst = instances[i]
        bounds = inst.geometry.bounds()
        duplicate = False
        for j in kept:
            other = instances[j]
            if other.label != inst.label or other.source_tile == inst.source_tile:
                continue
            if inst.source_tile is None or other.source_tile is None:
                continue
            if not _bounds_overlap(bounds, other.geometry.bounds()):
                continue
            if polygon_iou(inst.geometry, other.geometry) >= iou_threshold:
                duplicate = True
                break
        if duplicate:
            suppressed.add(i)
        else:
            kept.append(i)
    return [inst for i, inst in enumerate(instances) if i not in suppressed]


def _tile_key(tile):
    return -1 if tile is None else tile


def _bounds_overlap(a, b) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]
