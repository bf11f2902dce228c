"""Polygon value type shared by the vector pipeline.

Rings are stored closed (first vertex repeated at the end). Orientation is
normalized on construction: exterior counter-clockwise (positive shoelace
area), holes clockwise. "Counter-clockwise" is defined by the sign of the
shoelace sum in the stored coordinate axes, for both pixel and world space.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PIXEL_SPACE = "pixel"
WORLD_SPACE = "world"


def ring_signed_area(ring: np.ndarray) -> float:
    """Shoelace signed area; positive for counter-clockwise rings."""
    x, y = ring[:, 0], ring[:, 1]
    return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def _as_closed_ring(coords) -> np.ndarray:
    ring = np.asarray(coords, dtype=float)
    if ring.ndim != 2 or ring.shape[1] != 2:
        raise ValueError(f"ring must be an (N, 2) sequence, got shape {ring.shape}")
    if not np.all(np.isfinite(ring)):
        raise ValueError("ring contains non-finite coordinates")
    if not np.array_equal(ring[0], ring[-1]):
        ring = np.vstack([ring, ring[:1]])
    if ring.shape[0] < 4:
        raise ValueError(f"ring needs at least 4 stored vertices, got {ring.shape[0]}")
    return ring


@dataclass(frozen=True)
class PolygonGeometry:
    """Polygon with optional holes, tagged with its coordinate space."""

    exterior: np.ndarray
    holes: tuple = field(default=())
    space: str = PIXEL_SPACE

    def __post_init__(self):
        if self.space not in (PIXEL_SPACE, WORLD_SPACE):
            raise ValueError(f"unknown coordinate space {self.space!r}")
        exterior = _as_closed_ring(self.exterior)
        if abs(ring_signed_area(exterior)) == 0.0:
            raise ValueError("degenerate exterior ring (zero area)")
        if ring_signed_area(exterior) < 0:
            exterior = exterior[::-1].copy()
        holes = []
        for hole in self.holes:
            ring = _as_closed_ring(hole)
            if ring_signed_area(ring) > 0:
                ring = ring[::-1].copy()
            holes.append(ring)
        exterior.setflags(write=False)
        for ring in holes:
            ring.setflags(write=False)
        object.__setattr__(self, "exterior", exterior)
        object.__setattr__(self, "holes", tuple(holes))

    @property
    def area(self) -> float:
        """Net area: exterior minus holes."""
        return ring_signed_area(self.exterior) + sum(
            ring_signed_area(h) for h in self.holes
        )

    def rings(self) -> list:
        return [self.exterior, *self.holes]

    def bounds(self) -> tuple:
        """(minx, miny, maxx, maxy) over all rings."""
        pts = np.vstack(self.rings())
        return (
            float(pts[:, 0].min()),
            float(pts[:, 1].min()),
            float(pts[:, 0].max()),
            float(pts[:, 1].max()),
        )

    def transformed(self, apply, space: str) -> "PolygonGeometry":
        """Map every vertex through `apply((N,2) array) -> (N,2) array`."""
        return PolygonGeometry(
            exterior=apply(self.exterior),
            holes=tuple(apply(h) for h in self.holes),
            space=space,
        )

    def to_shapely(self):
        import shapely.geometry

        return shapely.geometry.Polygon(self.exterior, [h for h in self.holes])


def from_shapely(geom, space: str) -> PolygonGeometry:
    """Convert a shapely Polygon (orientation normalized on construction)."""
    return PolygonGeometry(
        exterior=np.asarray(geom.exterior.coords, dtype=float),
        holes=tuple(np.asarray(r.coords, dtype=float) for r in geom.interiors),
        space=space,
    )
