"""HTTP service: /v1/detect, /v1/segment, /v1/health.

Wire contract (JSON, UTF-8; coordinates tile-local pixels; RLE row-major
zero-first): 400 {error} for bad input, 503 {error} while models are not
available. Request handling is concurrent; model execution goes through a
single-consumer queue; segment embeddings are cached by image content hash.
"""
from __future__ import annotations

import base64
import io
import os

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from PIL import Image
from pydantic import BaseModel

from .inference import InferenceQueue
from .models import ModelRegistry
from .rle import encode_mask

ENV_MAX_SIDE = "FMARS_SIDECAR_MAX_SIDE"
DEFAULT_MAX_SIDE = 2048


class InputError(ValueError):
    pass


class DetectBody(BaseModel):
    image_png_b64: str
    prompt: str
    box_threshold: float
    text_threshold: float


class WireBox(BaseModel):
    x0: float
    y0: float
    x1: float
    y1: float


class SegmentBody(BaseModel):
    image_png_b64: str
    boxes: list[WireBox]
    multimask: bool = False


def _decode_image(data_b64: str, max_side: int) -> np.ndarray:
    try:
        image = Image.open(io.BytesIO(base64.b64decode(data_b64)))
        pixels = np.asarray(image.convert("RGB"), dtype=np.uint8)
    except Exception as exc:
        raise InputError(f"undecodable PNG image: {exc}") from exc
    h, w = pixels.shape[:2]
    if max(h, w) > max_side:
        raise InputError(f"image side {max(h, w)} exceeds the {max_side} px limit")
    if h == 0 or w == 0:
        raise InputError("image is empty")
    return pixels


def _validate_thresholds(body: DetectBody):
    for name in ("box_threshold", "text_threshold"):
        value = getattr(body, name)
        if not 0.0 <= value <= 1.0:
            raise InputError(f"{name} must be in [0, 1], got {value}")


def _clamped_boxes(boxes, h: int, w: int) -> list:
    out = []
    for i, b in enumerate(boxes):
        if not (b.x1 > b.x0 and b.y1 > b.y0):
            raise InputError(f"box {i} is degenerate: ({b.x0}, {b.y0}, {b.x1}, {b.y1})")
        out.append(
            {
                "x0": max(b.x0, 0.0),
                "y0": max(b.y0, 0.0),
                "x1": min(b.x1, float(w)),
                "y1": min(b.y1, float(h)),
            }
        )
    return out


def create_app(registry: ModelRegistry | None = None) -> FastAPI:
    app = FastAPI(title="fmars-sidecar")
    if registry is None:
        registry = ModelRegistry.from_env()
    registry.load()  # model load failure -> refuse to start
    app.state.registry = registry
    app.state.queue = InferenceQueue()
    app.state.max_side = int(os.environ.get(ENV_MAX_SIDE, str(DEFAULT_MAX_SIDE)))

    @app.exception_handler(InputError)
    async def input_error_handler(request: Request, exc: InputError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/v1/health")
    def health():
        if not registry.ready:
            return JSONResponse(
                status_code=503, content={"error": "models not loaded"}
            )
        return {"status": "ok", "models": registry.model_names()}

    @app.post("/v1/detect")
    def detect(body: DetectBody):
        if not registry.ready:
            return JSONResponse(status_code=503, content={"error": "models not loaded"})
        _validate_thresholds(body)
        image = _decode_image(body.image_png_b64, app.state.max_side)
        boxes = app.state.queue.run(
            lambda: registry.detector.detect(
                image, body.prompt, body.box_threshold, body.text_threshold
            )
        )
        return {"boxes": boxes}

    @app.post("/v1/segment")
    def segment(body: SegmentBody):
        if not registry.ready:
            return JSONResponse(status_code=503, content={"error": "models not loaded"})
        image = _decode_image(body.image_png_b64, app.state.max_side)
        if not body.boxes:
            raise InputError("segment request needs at least one box")
        h, w = image.shape[:2]
        boxes = _clamped_boxes(body.boxes, h, w)

        def run():
            embedding = registry.embedding_for(image)
            results = []
            for box in boxes:
                options = registry.segmenter.candidates(embedding, box, body.multimask)
                mask, score = max(options, key=lambda ms: ms[1])
                results.append({"rle": encode_mask(mask), "score": float(score)})
            return results

        return {"results": app.state.queue.run(run)}

    return app
