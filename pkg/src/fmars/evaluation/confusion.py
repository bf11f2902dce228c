"""Confusion-matrix accumulation and per-class Acc/IoU metrics.

Conventions: rows are ground truth, columns are predictions. "Acc" is
per-class recall (TP over ground-truth pixels of that class); mAcc/mIoU
are unweighted means over all classes including background, except classes
absent from both ground truth and prediction, which are excluded.

Printed aggregates use exact decimal arithmetic with half-up rounding:
binary-float means of two-decimal percentages land on exact halves (e.g.
mean 67.225) that float formatting would round the wrong way.
"""
from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from ..annotate.labels import CLASS_NAMES, ClassLabel

NUM_CLASSES = 4


class ConfusionMatrix:
    def __init__(self, num_classes: int = NUM_CLASSES):
        self.num_classes = num_classes
        self.counts = np.zeros((num_classes, num_classes), dtype=np.int64)

    def add(self, gt: np.ndarray, pred: np.ndarray):
        gt = np.asarray(gt)
        pred = np.asarray(pred)
        if gt.shape != pred.shape:
            raise ValueError(f"shape mismatch: gt {gt.shape} vs pred {pred.shape}")
        gt = gt.reshape(-1).astype(np.int64)
        pred = pred.reshape(-1).astype(np.int64)
        k = self.num_classes
        if gt.size and (gt.min() < 0 or gt.max() >= k or pred.min() < 0 or pred.max() >= k):
            raise ValueError(f"labels out of range [0, {k})")
        flat = np.bincount(gt * k + pred, minlength=k * k)
        self.counts += flat.reshape(k, k)
        return self

    def merge(self, other: "ConfusionMatrix"):
        self.counts += other.counts
        return self

    def total(self) -> int:
        return int(self.counts.sum())


def accumulate(cm: ConfusionMatrix, gt, pred) -> ConfusionMatrix:
    """cm[g][p] += pixel count with gt == g and pred == p."""
    return cm.add(gt, pred)


def class_metrics(cm: ConfusionMatrix, include_background: bool = True) -> dict:
    """Per-class accuracy (recall) and IoU plus their unweighted means.

    Classes with no ground-truth and no predicted pixels are excluded from
    the means. Fractions in [0, 1]; formatting to percentages happens in
    the report layer.
    """
    counts = cm.counts
    if counts.sum() == 0:
        raise ValueError("confusion matrix is empty")
    diag = np.diag(counts).astype(float)
    gt_total = counts.sum(axis=1).astype(float)
    pred_total = counts.sum(axis=0).astype(float)
    union = gt_total + pred_total - diag

    present = (gt_total + pred_total) > 0
    acc = np.where(gt_total > 0, diag / np.maximum(gt_total, 1), 0.0)
    iou = np.where(union > 0, diag / np.maximum(union, 1), 0.0)

    counted = present.copy()
    if not include_background:
        counted[ClassLabel.BACKGROUND] = False
    if not counted.any():
        raise ValueError("no classes present to average")

    per_class = {}
    for label in range(cm.num_classes):
        name = CLASS_NAMES.get(ClassLabel(label), str(label))
        per_class[name] = {
            "acc": float(acc[label]) if present[label] else None,
            "iou": float(iou[label]) if present[label] else None,
            "present": bool(present[label]),
        }
    return {
        "per_class": per_class,
        "mAcc": float(acc[counted].mean()),
        "mIoU": float(iou[counted].mean()),
    }


def unweighted_mean(values) -> float:
    """Mean of the reported per-class values, as the tables aggregate them."""
    values = [v for v in values if v is not None]
    if not values:
        raise ValueError("nothing to average")
    return float(sum(values) / len(values))


def table_mean(values, decimals: int = 2) -> str:
    """Unweighted mean of reported per-class percentages, printed exactly.

    Exact decimal arithmetic, half-up rounding: reproduces the report
    aggregation of two-decimal class values without binary-float drift.
    """
    values = [v for v in values if v is not None]
    if not values:
        raise ValueError("nothing to average")
    total = sum(Decimal(str(v)) for v in values)
    mean = total / Decimal(len(values))
    quantum = Decimal(1).scaleb(-decimals)
    return str(mean.quantize(quantum, rounding=ROUND_HALF_UP))


def format_percent(fraction: float, decimals: int = 2) -> str:
    """Render a [0, 1] fraction as a percentage with half-up rounding."""
    return table_mean([100.0 * fraction], decimals)
