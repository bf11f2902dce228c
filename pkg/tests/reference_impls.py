"""Independent brute-force references used as test oracles."""

from fmars.geometry import box_iou


def brute_force_filter(boxes, cfg, resolution_m):
    """Plain-loop reimplementation of the filter stack for oracle checks.

    Deliberately naive: explicit stages, quadratic NMS over index sets.
    """
    stage1 = [b for b in boxes if b.score >= cfg.box_threshold]

    # greedy NMS, highest score first, earlier input index wins ties
    remaining = list(range(len(stage1)))
    remaining.sort(key=lambda i: (-stage1[i].score, i))
    kept_indices = []
    while remaining:
        best = remaining.pop(0)
        kept_indices.append(best)
        remaining = [
            i
            for i in remaining
            if box_iou(stage1[best].box, stage1[i].box) < cfg.nms_iou
        ]
    stage2 = [stage1[i] for i in kept_indices]

    stage3 = []
    for b in stage2:
        w, h = b.box.width, b.box.height
        if min(w, h) / max(w, h) < cfg.min_aspect:
            continue
        stage3.append(b)

    stage4 = []
    for b in stage3:
        if b.box.area * resolution_m**2 > cfg.max_area_m2:
            continue
        stage4.append(b)
    return stage4
