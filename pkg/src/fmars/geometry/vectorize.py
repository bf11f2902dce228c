"""Binary mask to polygon extraction (the inverse of rasterization).

Boundaries are traced along pixel edges ("cracks"), so vertices sit on
integer pixel corners and rasterizing the result with the pixel-center rule
reproduces the mask exactly before simplification. Components are
4-connected; holes are preserved as interior rings.
"""
from __future__ import annotations

import numpy as np
import scipy.ndimage

from .polygons import PIXEL_SPACE, PolygonGeometry, from_shapely, ring_signed_area

# Outgoing probe order at a boundary corner, given the incoming direction:
# left turn first, then straight, then right. Directions are (dx, dy) with
# y growing downward; foreground lies on the right of every directed edge.
_LEFT = {(1, 0): (0, -1), (0, -1): (-1, 0), (-1, 0): (0, 1), (0, 1): (1, 0)}
_RIGHT = {v: k for k, v in _LEFT.items()}


def polygonize_mask(
    mask: np.ndarray, min_area_px: float = 4.0, simplify_tol_px: float = 0.5
) -> list:
    """Extract one polygon per 4-connected foreground component.

    Components with fewer than `min_area_px` pixels are dropped. Vertices
    are Douglas-Peucker simplified with `simplify_tol_px` (0 disables).
    """
    mask = np.asarray(mask) != 0
    if mask.ndim != 2 or mask.size == 0:
        raise ValueError(f"expected a non-empty 2-D mask, got shape {mask.shape}")
    labels, count = scipy.ndimage.label(mask)
    polygons = []
    for index, bbox in enumerate(scipy.ndimage.find_objects(labels), start=1):
        component = labels[bbox] == index
        if component.sum() < min_area_px:
            continue
        rings = _trace_boundaries(component)
        exterior = [r for r in rings if ring_signed_area(r) > 0]
        holes = [r for r in rings if ring_signed_area(r) < 0]
        if len(exterior) != 1:
            raise AssertionError(
                f"component {index} traced {len(exterior)} exterior rings"
            )
        offset = np.array([bbox[1].start, bbox[0].start], dtype=float)
        poly = PolygonGeometry(
            exterior=exterior[0] + offset,
            holes=tuple(h + offset for h in holes),
            space=PIXEL_SPACE,
        )
        if simplify_tol_px > 0:
            poly = _simplify(poly, simplify_tol_px)
        polygons.append(poly)
    return polygons


def _simplify(poly: PolygonGeometry, tol: float) -> PolygonGeometry:
    simplified = poly.to_shapely().simplify(tol, preserve_topology=True)
    if simplified.is_empty or simplified.geom_type != "Polygon":
        return poly
    return from_shapely(simplified, poly.space)


def _trace_boundaries(component: np.ndarray) -> list:
    """Closed corner-coordinate rings bounding a single component.

    The exterior comes out with positive shoelace area, holes negative. At
    corners where the boundary pinches (diagonally touching pixels), the
    left-most turn is taken, which keeps every ring simple.
    """
    fg = np.pad(component, 1)
    inner = fg[1:-1, 1:-1]
    h, w = inner.shape

    # Directed boundary edges, keyed by side. Start corners are (x, y).
    edge_sides = [
        (inner & ~fg[:-2, 1:-1], (0, 0), (1, 0)),  # background above: head east
        (inner & ~fg[2:, 1:-1], (1, 1), (-1, 0)),  # background below: head west
        (inner & ~fg[1:-1, :-2], (0, 1), (0, -1)),  # background left: head north
        (inner & ~fg[1:-1, 2:], (1, 0), (0, 1)),  # background right: head south
    ]
    outgoing: dict = {}
    for sides, (cx, cy), direction in edge_sides:
        rows, cols = np.nonzero(sides)
        for r, c in zip(rows.tolist(), cols.tolist()):
            outgoing.setdefault((c + cx, r + cy), {})[direction] = False

    rings = []
    for start, directions in outgoing.items():
        for start_dir in directions:
            if directions[start_dir]:
                continue
            rings.append(_walk(outgoing, start, start_dir))
    return rings


def _walk(outgoing: dict, start: tuple, start_dir: tuple) -> np.ndarray:
    vertices = [start]
    corner, direction = start, start_dir
    while True:
        outgoing[corner][direction] = True
        corner = (corner[0] + direction[0], corner[1] + direction[1])
        if corner == start:
            break
        candidates = outgoing[corner]
        for turn in (_LEFT[direction], direction, _RIGHT[direction]):
            if turn in candidates and not candidates[turn]:
                if turn != direction:
                    vertices.append(corner)
                direction = turn
                break
        else:
            raise AssertionError(f"boundary walk dead-ends at corner {corner}")
    if direction == start_dir:
        vertices = vertices[1:]  # start sat mid-edge, keep only true corners
    vertices.append(vertices[0])
    return np.asarray(vertices, dtype=float)
