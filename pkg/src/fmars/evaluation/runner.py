"""Directory-level evaluation: tile IO, aggregation, report formatting."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .confusion import ConfusionMatrix, class_metrics, format_percent
from .openset import CONFIDENCE_TAU, threshold_softmax

SCORE_SUFFIX = ".scores.json"


@dataclass(frozen=True)
class EvalConfig:
    confidence_tau: float = CONFIDENCE_TAU
    ignore_background: bool = False

    def __post_init__(self):
        if not 0.0 <= self.confidence_tau <= 1.0:
            raise ValueError(f"confidence_tau must be in [0, 1], got {self.confidence_tau}")


def write_label_png(path, grid: np.ndarray) -> Path:
    path = Path(path)
    Image.fromarray(np.asarray(grid, dtype=np.uint8), mode="L").save(path)
    return path


def read_label_png(path) -> np.ndarray:
    image = Image.open(path)
    if image.mode != "L":
        image = image.convert("L")
    return np.asarray(image, dtype=np.uint8)


def write_score_map(header_path, scores: np.ndarray) -> Path:
    """Score-map fixture: JSON header + raw float32 class planes (c, h, w)."""
    header_path = Path(header_path)
    if not header_path.name.endswith(SCORE_SUFFIX):
        raise ValueError(f"score map header must end with {SCORE_SUFFIX!r}")
    scores = np.ascontiguousarray(scores, dtype=np.float32)
    if scores.ndim != 3:
        raise ValueError(f"scores must be (h, w, classes), got {scores.shape}")
    planes = scores.transpose(2, 0, 1)
    data_name = header_path.name[: -len(SCORE_SUFFIX)] + ".f32"
    (header_path.parent / data_name).write_bytes(planes.tobytes())
    header_path.write_text(
        json.dumps(
            {
                "height": scores.shape[0],
                "width": scores.shape[1],
                "classes": scores.shape[2],
                "data": data_name,
            }
        )
    )
    return header_path


def read_score_map(header_path) -> np.ndarray:
    header_path = Path(header_path)
    header = json.loads(header_path.read_text())
    shape = (header["classes"], header["height"], header["width"])
    raw = np.fromfile(header_path.parent / header["data"], dtype=np.float32)
    if raw.size != shape[0] * shape[1] * shape[2]:
        raise ValueError(f"score map {header_path} data size mismatch")
    return raw.reshape(shape).transpose(1, 2, 0)


def _tile_ids(directory: Path) -> list:
    return sorted(p.stem for p in directory.glob("*.png"))


def eval_run(gt_dir, pred_dir, cfg: EvalConfig = EvalConfig()) -> dict:
    """Aggregate a confusion matrix over matching gt/pred tiles.

    Ground truth tiles are single-band PNGs of class indices. Predictions
    are either PNGs of the same form or score-map fixtures, which are
    decoded with the open-set confidence cutoff.
    """
    gt_dir, pred_dir = Path(gt_dir), Path(pred_dir)
    ids = _tile_ids(gt_dir)
    if not ids:
        raise ValueError(f"no ground-truth tiles (*.png) found in {gt_dir}")
    missing = [
        tile_id
        for tile_id in ids
        if not (pred_dir / f"{tile_id}.png").exists()
        and not (pred_dir / f"{tile_id}{SCORE_SUFFIX}").exists()
    ]
    if missing:
        raise ValueError(f"predictions missing for tiles: {', '.join(missing)}")

    cm = ConfusionMatrix()
    for tile_id in ids:
        gt = read_label_png(gt_dir / f"{tile_id}.png")
        pred_png = pred_dir / f"{tile_id}.png"
        if pred_png.exists():
            pred = read_label_png(pred_png)
        else:
            scores = read_score_map(pred_dir / f"{tile_id}{SCORE_SUFFIX}")
            pred = threshold_softmax(scores, cfg.confidence_tau)
        if gt.shape != pred.shape:
            raise ValueError(f"tile {tile_id}: gt {gt.shape} vs pred {pred.shape}")
        cm.add(gt, pred)

    metrics = class_metrics(cm, include_background=not cfg.ignore_background)
    return {
        "tiles": len(ids),
        "pixels": cm.total(),
        "confusion": cm.counts.tolist(),
        **metrics,
    }


def format_metrics_table(report: dict, row_label: str = "run") -> str:
    """Aligned table: per-class Acc./IoU column pairs, then mAcc and mIoU."""
    names = list(report["per_class"])
    width = max(len(row_label), len("method"))

    def pct(value):
        return "    --" if value is None else format_percent(value).rjust(6)

    head = (
        "method".ljust(width)
        + "".join(f" | {name:^15}" for name in names)
        + " |  mAcc. |   mIoU"
    )
    sub = " " * width + " |   Acc.     IoU " * len(names) + " |        |       "
    row = (
        row_label.ljust(width)
        + "".join(
            f" | {pct(cell['acc'])}  {pct(cell['iou'])} "
            for cell in report["per_class"].values()
        )
        + f" | {pct(report['mAcc'])} | {pct(report['mIoU'])}"
    )
    return "\n".join((head, sub, row))
