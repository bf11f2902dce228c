"""Entropy-weighted tile sampling for training."""
from __future__ import annotations

import numpy as np

from .tiling import TRAIN


def sample_tiles(records, n: int, seed: int) -> list:
    """Draw n training tiles with replacement, P(tile) proportional to its
    label entropy. Zero-entropy tiles carry no label signal and are never
    drawn. Seeded and reproducible."""
    if n < 0:
        raise ValueError("n must be non-negative")
    eligible = [r for r in records if r.split == TRAIN and r.entropy_bits > 0.0]
    if not eligible:
        raise ValueError("no training tiles with positive entropy to sample from")
    weights = np.array([r.entropy_bits for r in eligible], dtype=float)
    probabilities = weights / weights.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(eligible), size=n, replace=True, p=probabilities)
    return [eligible[i] for i in draws]
