"""Shannon entropy of tile label histograms.

Base-2 logs: entropies are in bits. Any fixed base gives the same sampling
distribution (weights are normalized), so the base is cosmetic.
"""
from __future__ import annotations

import numpy as np


def label_entropy(hist) -> float:
    """H = -sum p_c log2 p_c over classes with p_c > 0."""
    counts = np.asarray(hist, dtype=float)
    if counts.ndim != 1 or counts.size == 0:
        raise ValueError("histogram must be a non-empty 1-D sequence")
    if np.any(counts < 0):
        raise ValueError("histogram counts must be non-negative")
    total = counts.sum()
    if total == 0:
        raise ValueError("histogram is empty (all counts zero)")
    p = counts[counts > 0] / total
    value = float(-(p * np.log2(p)).sum())
    return 0.0 if value == 0 else value  # avoid -0.0 for single-class tiles
