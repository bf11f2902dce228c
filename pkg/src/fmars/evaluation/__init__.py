"""Segmentation evaluation: confusion metrics and open-set decoding."""

from .confusion import (
    ConfusionMatrix,
    NUM_CLASSES,
    accumulate,
    class_metrics,
    format_percent,
    table_mean,
    unweighted_mean,
)
from .openset import CONFIDENCE_TAU, threshold_softmax
from .runner import (
    EvalConfig,
    eval_run,
    format_metrics_table,
    read_label_png,
    read_score_map,
    write_label_png,
    write_score_map,
)

__all__ = [
    "CONFIDENCE_TAU",
    "ConfusionMatrix",
    "EvalConfig",
    "NUM_CLASSES",
    "accumulate",
    "class_metrics",
    "eval_run",
    "format_metrics_table",
    "format_percent",
    "read_label_png",
    "read_score_map",
    "table_mean",
    "threshold_softmax",
    "unweighted_mean",
    "write_label_png",
    "write_score_map",
]
