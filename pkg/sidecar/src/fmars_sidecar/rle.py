"""Run-length mask encoding, matching the client convention bit-exactly:
row-major scan, alternating runs starting with a zero-run, counts summing
to height * width."""
from __future__ import annotations

import numpy as np


def encode_mask(mask: np.ndarray) -> dict:
    mask = np.asarray(mask)
    flat = (mask.reshape(-1) != 0).astype(np.uint8)
    changes = np.flatnonzero(np.diff(flat))
    boundaries = np.concatenate([[0], changes + 1, [flat.size]])
    counts = np.diff(boundaries).tolist()
    if flat.size and flat[0] == 1:
        counts = [0] + counts
    return {"size": [int(mask.shape[0]), int(mask.shape[1])], "counts": counts}
