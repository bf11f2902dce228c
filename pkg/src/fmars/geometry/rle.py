"""Run-length codec for binary masks.

Convention: row-major scan, runs alternate 0-value then 1-value, starting
with a 0-run. A mask that begins with a foreground pixel therefore encodes
a leading zero-length run. `sum(counts)` always equals height * width.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MaskRLE:
    height: int
    width: int
    counts: tuple = field(default=())

    def __post_init__(self):
        if self.height <= 0 or self.width <= 0:
            raise ValueError(f"mask dimensions must be positive: {self.height}x{self.width}")
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("run lengths must be non-negative")
        if sum(counts) != self.height * self.width:
            raise ValueError(
                f"run lengths sum to {sum(counts)}, expected {self.height * self.width}"
            )
        object.__setattr__(self, "counts", counts)


def rle_encode(mask: np.ndarray) -> MaskRLE:
    """Encode a 2-D binary mask (row-major, zero-first runs)."""
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise ValueError(f"expected 2-D mask, got shape {mask.shape}")
    flat = (mask.reshape(-1) != 0).astype(np.uint8)
    changes = np.flatnonzero(np.diff(flat))
    boundaries = np.concatenate([[0], changes + 1, [flat.size]])
    counts = np.diff(boundaries).tolist()
    if flat[0] == 1:
        counts = [0] + counts
    return MaskRLE(mask.shape[0], mask.shape[1], tuple(counts))


def rle_decode(r: MaskRLE) -> np.ndarray:
    """Decode back to a 2-D bool mask. Inverse of `rle_encode`."""
    flat = np.zeros(r.height * r.width, dtype=bool)
    pos = 0
    value = False
    for count in r.counts:
        if value:
            flat[pos : pos + count] = True
        pos += count
        value = not value
    return flat.reshape(r.height, r.width)
