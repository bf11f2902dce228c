"""Open-set decoding: low-confidence pixels fall back to background."""
from __future__ import annotations

import numpy as np

CONFIDENCE_TAU = 0.9


def threshold_softmax(scores: np.ndarray, tau: float = CONFIDENCE_TAU) -> np.ndarray:
    """Decode per-pixel class scores with a confidence cutoff.

    `scores` has shape (h, w, c) with one channel per non-background class
    (channel i maps to class id i + 1), each value in [0, 1] and per-pixel
    sums at most 1 (within 1e-6). A pixel gets the argmax class when the
    max score reaches `tau`, otherwise background (0). tau = 0 degenerates
    to plain argmax decoding.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    scores = np.asarray(scores, dtype=float)
    if scores.ndim != 3 or scores.shape[2] < 1:
        raise ValueError(f"scores must be (h, w, classes), got shape {scores.shape}")
    if not np.all(np.isfinite(scores)):
        raise ValueError("scores contain non-finite values")
    if scores.min() < 0.0 or scores.max() > 1.0:
        raise ValueError("scores must lie in [0, 1]")
    if scores.sum(axis=2).max() > 1.0 + 1e-6:
        raise ValueError("per-pixel scores sum to more than 1")
    best = scores.argmax(axis=2)
    confident = scores.max(axis=2) >= tau
    return np.where(confident, best + 1, 0).astype(np.uint8)
