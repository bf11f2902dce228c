"""Command-line surface: annotate | tile | sample | split | eval | stats.

Data goes to files or stdout; structured JSON log lines go to stderr.
Exit codes: 0 success, 1 input error, 2 backend failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .annotate import (
    ANNOTATED_CLASSES,
    Checkpoint,
    ClassLabel,
    NAME_TO_CLASS,
    annotate_class,
    merge_and_write,
)
from .annotate.pipeline import AnnotationSources
from .backends.types import BackendError
from .config import apply_overrides, build_backends, load_config
from .dataset import (
    ImageInfo,
    TileManifest,
    dataset_stats,
    format_stats_table,
    read_manifest,
    sample_tiles,
    select_test_images,
    tile_image,
    write_manifest,
)
from .evaluation import EvalConfig, eval_run, format_metrics_table, read_label_png
from .ingest import load_footprints, load_roads, open_raster

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_BACKEND_ERROR = 2


def log_event(event: str, **fields):
    record = {"event": event, "ts": round(time.time(), 3), **fields}
    print(json.dumps(record), file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are input errors: exit 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR)


def _cmd_annotate(args) -> int:
    config = load_config(args.config)
    apply_overrides(
        config,
        backend_mode=args.backend,
        url=args.url,
        workers=args.workers,
        output=args.output,
        checkpoint=args.checkpoint,
        seed=args.seed,
    )
    if args.print_config:
        print(json.dumps(config.resolved(), indent=2, sort_keys=True))
        return EXIT_OK
    if not config.raster:
        raise ValueError("config is missing the raster path")

    raster = open_raster(config.raster)
    extent = raster.world_extent()
    requested = []
    for name in config.classes:
        if name not in NAME_TO_CLASS or NAME_TO_CLASS[name] not in ANNOTATED_CLASSES:
            raise ValueError(f"unknown annotation class {name!r}")
        requested.append(NAME_TO_CLASS[name])

    sources = AnnotationSources()
    if ClassLabel.BUILDINGS in requested:
        if not config.footprints:
            raise ValueError("buildings requested but no footprints path configured")
        sources.footprints = load_footprints(config.footprints, extent)
        log_event(
            "footprints_loaded",
            count=len(sources.footprints),
            skipped_invalid=sources.footprints.skipped_invalid,
            skipped_non_polygon=sources.footprints.skipped_non_polygon,
        )
    if ClassLabel.ROADS in requested:
        if not config.roads:
            raise ValueError("roads requested but no roads path configured")
        sources.roads = load_roads(config.roads, extent)
        log_event("roads_loaded", count=len(sources.roads))

    detector, segmenter = build_backends(config.backend)
    checkpoint = Checkpoint(config.checkpoint) if config.checkpoint else None
    annotate_cfg = config.annotate_config()

    instances = []
    for label in requested:
        began = time.perf_counter()

        def on_tile(index, count, seconds, _label=label):
            log_event(
                "tile_done",
                class_name=_label.name.lower(),
                tile=index,
                instances=count,
                seconds=round(seconds, 4),
            )

        try:
            class_instances = annotate_class(
                raster,
                label,
                sources,
                detector=detector,
                segmenter=segmenter,
                cfg=annotate_cfg,
                checkpoint=checkpoint,
                on_tile=on_tile,
            )
        except BackendError:
            log_event(
                "aborted",
                class_name=label.name.lower(),
                checkpoint=config.checkpoint,
                resumable=bool(config.checkpoint),
            )
            raise
        log_event(
            "class_done",
            class_name=label.name.lower(),
            instances=len(class_instances),
            seconds=round(time.perf_counter() - began, 4),
        )
        instances.extend(class_instances)

    path = merge_and_write(instances, config.output)
    log_event("annotations_written", path=str(path), instances=len(instances))
    print(path)
    return EXIT_OK


def _cmd_tile(args) -> int:
    labels = read_label_png(args.labels)
    records = tile_image(labels, args.event, args.image, size=args.size)
    manifest = read_manifest(args.manifest) if (args.append and Path(args.manifest).exists()) else TileManifest()
    manifest.add_image(
        ImageInfo(
            event_id=args.event,
            image_id=args.image,
            width=labels.shape[1],
            height=labels.shape[0],
            resolution_m=args.resolution_m,
        ),
        records,
    )
    write_manifest(manifest, args.manifest)
    log_event(
        "tiled",
        event_id=args.event,
        image_id=args.image,
        tiles=len(records),
        manifest=str(args.manifest),
    )
    return EXIT_OK


def _cmd_sample(args) -> int:
    manifest = read_manifest(args.manifest)
    draws = sample_tiles(manifest.records, args.n, args.seed)
    for record in draws:
        print(
            json.dumps(
                {
                    "event_id": record.event_id,
                    "image_id": record.image_id,
                    "row": record.row,
                    "col": record.col,
                }
            )
        )
    log_event("sampled", n=args.n, seed=args.seed)
    return EXIT_OK


def _cmd_split(args) -> int:
    manifest = read_manifest(args.manifest)
    manifest.records = select_test_images(manifest.records)
    manifest.check_one_test_image_per_event()
    out = args.output or args.manifest
    write_manifest(manifest, out)
    log_event("split_assigned", manifest=str(out), test_images=manifest.test_images())
    return EXIT_OK


def _cmd_eval(args) -> int:
    cfg = EvalConfig(confidence_tau=args.tau, ignore_background=args.ignore_background)
    report = eval_run(args.gt, args.pred, cfg)
    print(json.dumps(report, indent=2))
    print(format_metrics_table(report), file=sys.stderr)
    return EXIT_OK


def _cmd_stats(args) -> int:
    manifest = read_manifest(args.manifest) if args.manifest else TileManifest()
    annotations = {}
    for item in args.annotations or []:
        event, _, path = item.partition("=")
        if not path:
            raise ValueError(f"--annotations wants event=path, got {item!r}")
        annotations.setdefault(event, []).append(path)
    report = dataset_stats(manifest, annotations)
    print(json.dumps(report, indent=2))
    print(format_stats_table(report), file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fmars", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    annotate = sub.add_parser("annotate", help="run the annotation pipeline")
    annotate.add_argument("--config", required=True)
    annotate.add_argument("--backend", choices=["mock", "remote"], default=None)
    annotate.add_argument("--url", default=None, help="remote backend URL")
    annotate.add_argument("--workers", type=int, default=None)
    annotate.add_argument("--output", default=None)
    annotate.add_argument("--checkpoint", default=None)
    annotate.add_argument("--seed", type=int, default=None)
    annotate.add_argument("--print-config", action="store_true")
    annotate.set_defaults(run=_cmd_annotate)

    tile = sub.add_parser("tile", help="tile a label raster into a manifest")
    tile.add_argument("--labels", required=True, help="single-band PNG of class ids")
    tile.add_argument("--event", required=True)
    tile.add_argument("--image", required=True)
    tile.add_argument("--size", type=int, default=512)
    tile.add_argument("--resolution-m", type=float, required=True)
    tile.add_argument("--manifest", required=True)
    tile.add_argument("--append", action="store_true")
    tile.set_defaults(run=_cmd_tile)

    sample = sub.add_parser("sample", help="entropy-weighted tile sampling")
    sample.add_argument("--manifest", required=True)
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--seed", type=int, default=0)
    sample.set_defaults(run=_cmd_sample)

    split = sub.add_parser("split", help="select per-event test images")
    split.add_argument("--manifest", required=True)
    split.add_argument("--output", default=None)
    split.set_defaults(run=_cmd_split)

    evaluate = sub.add_parser("eval", help="evaluate prediction tiles")
    evaluate.add_argument("--gt", required=True)
    evaluate.add_argument("--pred", required=True)
    evaluate.add_argument("--tau", type=float, default=0.9)
    evaluate.add_argument("--ignore-background", action="store_true")
    evaluate.set_defaults(run=_cmd_eval)

    stats = sub.add_parser("stats", help="dataset statistics report")
    stats.add_argument("--manifest", default=None)
    stats.add_argument(
        "--annotations",
        action="append",
        metavar="EVENT=PATH",
        help="annotation GeoJSON per event (repeatable)",
    )
    stats.set_defaults(run=_cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except BackendError as exc:
        log_event("backend_failure", error=str(exc))
        return EXIT_BACKEND_ERROR
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        log_event("input_error", error=str(exc))
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
