"""Per-event test image selection by average information content."""
from __future__ import annotations

from collections import defaultdict

from .tiling import TEST, TRAIN


def select_test_images(records) -> list:
    """Tag the image with the highest mean tile entropy per event as test.

    Ties go to the lexicographically smallest image id, so the choice is
    invariant to record order. All other images become train. Returns new
    records in the input order.
    """
    sums: dict = defaultdict(float)
    counts: dict = defaultdict(int)
    events: dict = defaultdict(set)
    for r in records:
        key = (r.event_id, r.image_id)
        sums[key] += r.entropy_bits
        counts[key] += 1
        events[r.event_id].add(r.image_id)

    chosen = {}
    for event_id, image_ids in events.items():
        def mean_entropy(image_id):
            key = (event_id, image_id)
            return sums[key] / counts[key]

        chosen[event_id] = min(sorted(image_ids), key=lambda im: (-mean_entropy(im), im))

    return [
        r.with_split(TEST if chosen[r.event_id] == r.image_id else TRAIN)
        for r in records
    ]
