"""JSON wire codecs shared by the remote client and its contract tests.

Protocol (HTTP/1.1, JSON bodies, UTF-8; coordinates are tile-local pixels;
RLE is row-major with zero-first runs):

  POST /v1/detect  {image_png_b64, prompt, box_threshold, text_threshold}
                   -> {boxes: [{x0, y0, x1, y1, score, phrase}]}
  POST /v1/segment {image_png_b64, boxes: [{x0, y0, x1, y1}], multimask}
                   -> {results: [{rle: {size: [h, w], counts: [...]}, score}]}
  GET  /v1/health  -> {status: "ok", models: [...]}
  Errors: 400 {error}, 503 {error}
"""
from __future__ import annotations

import base64
import io

import numpy as np
from PIL import Image

from ..geometry import MaskRLE, PixelBox, ScoredBox
from .types import ProtocolError


def encode_png_b64(tile: np.ndarray) -> str:
    buf = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(tile, dtype=np.uint8), mode="RGB").save(
        buf, format="PNG"
    )
    return base64.b64encode(buf.getvalue()).decode("ascii")


def decode_png_b64(data: str) -> np.ndarray:
    try:
        image = Image.open(io.BytesIO(base64.b64decode(data)))
        return np.asarray(image.convert("RGB"), dtype=np.uint8)
    except Exception as exc:
        raise ProtocolError(f"undecodable PNG payload: {exc}") from exc


def box_to_json(box: PixelBox) -> dict:
    return {"x0": box.x0, "y0": box.y0, "x1": box.x1, "y1": box.y1}


def box_from_json(payload: dict) -> PixelBox:
    try:
        return PixelBox(
            float(payload["x0"]),
            float(payload["y0"]),
            float(payload["x1"]),
            float(payload["y1"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed box {payload!r}: {exc}") from exc


def detect_request_to_json(tile, prompt, box_threshold, text_threshold) -> dict:
    return {
        "image_png_b64": encode_png_b64(tile),
        "prompt": prompt,
        "box_threshold": box_threshold,
        "text_threshold": text_threshold,
    }


def detect_response_from_json(payload: dict) -> list:
    if "boxes" not in payload or not isinstance(payload["boxes"], list):
        raise ProtocolError("detect response is missing the boxes list")
    boxes = []
    for item in payload["boxes"]:
        box = box_from_json(item)
        try:
            boxes.append(
                ScoredBox(box, float(item["score"]), str(item.get("phrase", "")))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed scored box {item!r}: {exc}") from exc
    return boxes


def detect_response_to_json(boxes) -> dict:
    return {
        "boxes": [
            {**box_to_json(b.box), "score": b.score, "phrase": b.phrase} for b in boxes
        ]
    }


def segment_request_to_json(tile, boxes, multimask) -> dict:
    return {
        "image_png_b64": encode_png_b64(tile),
        "boxes": [box_to_json(b) for b in boxes],
        "multimask": bool(multimask),
    }


def rle_to_json(rle: MaskRLE) -> dict:
    return {"size": [rle.height, rle.width], "counts": list(rle.counts)}


def rle_from_json(payload: dict) -> MaskRLE:
    try:
        h, w = payload["size"]
        return MaskRLE(int(h), int(w), tuple(int(c) for c in payload["counts"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed RLE payload: {exc}") from exc


def segment_response_from_json(payload: dict) -> list:
    """Returns [(MaskRLE, score), ...]; RLE invariants are enforced."""
    if "results" not in payload or not isinstance(payload["results"], list):
        raise ProtocolError("segment response is missing the results list")
    out = []
    for item in payload["results"]:
        rle = rle_from_json(item.get("rle", {}))
        try:
            score = float(item["score"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed segment score {item!r}: {exc}") from exc
        out.append((rle, score))
    return out


def segment_response_to_json(results) -> dict:
    return {
        "results": [
            {"rle": rle_to_json(rle), "score": score} for rle, score in results
        ]
    }
