#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Command line front end.

.. code:: sh

    visarea run --viewpoint 2,1 --output out.poly --svg out.svg polygon.poly
    visarea generate --family random --n 50 --seed 7 --output p.poly
    visarea bench --config configs/bench/comb.yaml
    visarea check CHECK.NUM_RANDOM 100

Options go before the input file; trailing ``KEY VALUE`` pairs override
config entries. Exit codes: 0 on success, 1 for invalid input or
arguments, 2 for degenerate input, 3 for a pipeline error.
"""

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from visarea.algorithms.driver import effective_criticals
from visarea.algorithms.effective import PipelineMode, compute_effective
from visarea.config import Config, get_config
from visarea.core.benchmark import BENCH_COLUMNS, Benchmark, run_engine
from visarea.core.errors import VisibilityError
from visarea.core.geometry import Point, shadow_point
from visarea.core.logging import logger
from visarea.core.polygon import (
    CriticalConvention,
    PolygonInput,
    format_polygon,
    read_polygon,
    validate,
    write_polygon,
)
from visarea.core.registry import registry
from visarea.oracle.corpus import Corpus, fixed_corpus, random_corpus
from visarea.oracle.reference import visible_critical_indices
from visarea.utils.visualizations.svg import render_svg, write_svg


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _viewpoint(text: str) -> Point:
    try:
        x, y = (float(part) for part in text.split(","))
        return Point(x, y)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 'x,y' with finite numbers, got {text!r}"
        )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help="comma separated yaml configs merged over the defaults",
    )
    parser.add_argument(
        "opts",
        default=None,
        nargs=argparse.REMAINDER,
        help="Modify config options from command line",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="visarea",
        description="Visibility polygons of simple polygons.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser(
        "run", help="compute the visibility polygon of a polygon file"
    )
    run_parser.add_argument("input", type=str, help="polygon file")
    run_parser.add_argument(
        "--viewpoint",
        type=_viewpoint,
        default=None,
        help="viewpoint 'x,y'; overrides the one stored in the file",
    )
    run_parser.add_argument(
        "--engine", choices=["constrained", "oracle"], default=None
    )
    run_parser.add_argument(
        "--mode", choices=[m.value for m in PipelineMode], default=None
    )
    run_parser.add_argument(
        "--output", type=str, default=None, help="default: stdout"
    )
    run_parser.add_argument("--svg", type=str, default=None)
    run_parser.add_argument(
        "--stats", type=str, default=None, help="JSON run statistics"
    )
    _add_common(run_parser)

    generate_parser = subparsers.add_parser(
        "generate", help="write a generated polygon with its viewpoint"
    )
    generate_parser.add_argument(
        "--family",
        type=str,
        default=None,
        help="corpus family (default: GENERATOR.FAMILY)",
    )
    generate_parser.add_argument("--n", type=int, required=True)
    generate_parser.add_argument("--seed", type=int, required=True)
    generate_parser.add_argument(
        "--output", type=str, default=None, help="default: stdout"
    )
    _add_common(generate_parser)

    bench_parser = subparsers.add_parser(
        "bench", help="workspace counters over a size sweep"
    )
    bench_parser.add_argument(
        "--stats", type=str, default=None, help="JSON rows and slopes"
    )
    _add_common(bench_parser)

    check_parser = subparsers.add_parser(
        "check", help="compare both engines over the corpus"
    )
    check_parser.add_argument(
        "--archive-dir",
        type=str,
        default=None,
        help="where failing instances go (default: CHECK.ARCHIVE_DIR)",
    )
    check_parser.add_argument(
        "--stats", type=str, default=None, help="JSON report"
    )
    _add_common(check_parser)
    return parser


def _config(args: argparse.Namespace, extra: Sequence = ()) -> Config:
    opts = list(extra) + list(args.opts or [])
    config = get_config(args.config, opts)
    logger.configure(config.LOG_FILE or None, config.VERBOSE)
    return config


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf8") as f:
        f.write(text)


def _write_json(path: str, record) -> None:
    _write_text(path, json.dumps(record, indent=2) + "\n")


def _markers(
    polygon: PolygonInput, config: Config
) -> Tuple[List[Point], List[Tuple[Point, Point]]]:
    points = polygon.points
    convention = CriticalConvention(config.POLYGON.CRITICAL_CONVENTION)
    if config.ENGINE == "constrained":
        flags = compute_effective(polygon, convention=convention)
        indices = [i for i, _ in effective_criticals(polygon, flags)]
    else:
        indices = visible_critical_indices(polygon, convention)
    criticals = [points[i] for i in indices]
    edges = list(polygon.edges())
    windows = []
    for v in criticals:
        hit = shadow_point(polygon.viewpoint, v, edges)
        if hit is not None:
            windows.append((v, hit.point))
    return criticals, windows


def run(args: argparse.Namespace) -> int:
    extra = []
    if args.engine is not None:
        extra += ["ENGINE", args.engine]
    if args.mode is not None:
        extra += ["MODE", args.mode]
    config = _config(args, extra)
    polygon = read_polygon(args.input, args.viewpoint)
    validate(polygon, strict=config.POLYGON.STRICT_VALIDATION)

    engine_cls = registry.get_engine(config.ENGINE)
    if engine_cls is None:
        logger.error("unknown engine %s", config.ENGINE)
        return 1
    try:
        points, stats = run_engine(engine_cls(config), polygon)
    except VisibilityError as exc:
        if args.stats and exc.stats is not None:
            _write_json(args.stats, exc.stats.to_dict())
        raise
    _write_text(args.output, format_polygon(points, polygon.viewpoint))
    if args.stats:
        _write_json(args.stats, stats.to_dict())
    if args.svg:
        criticals, windows = _markers(polygon, config)
        write_svg(
            args.svg,
            render_svg(polygon, points, config.SVG, criticals, windows),
        )
    logger.info(
        "%s: %d of %d vertices in the visibility polygon, %d reads",
        args.input,
        len(points),
        stats.n,
        stats.meter.get("vertex_reads", 0),
    )
    return 0


def generate(args: argparse.Namespace) -> int:
    config = _config(args)
    family = args.family or config.GENERATOR.FAMILY
    make = registry.get_corpus_family(family)
    if make is None:
        logger.error(
            "unknown family %s, expected one of %s",
            family,
            ", ".join(registry.list_corpus_families()),
        )
        return 1
    generator = config.GENERATOR.clone()
    generator.defrost()
    generator.NUM_VERTICES = args.n
    instance = make(generator, args.seed)
    polygon = instance.polygon
    if args.output is None:
        _write_text(None, format_polygon(polygon.points, polygon.viewpoint))
    else:
        write_polygon(args.output, polygon.points, polygon.viewpoint)
    return 0


def _format_table(rows: Sequence[dict]) -> str:
    lines = ["\t".join(BENCH_COLUMNS)]
    for row in rows:
        cells = []
        for key in BENCH_COLUMNS:
            value = row[key]
            if isinstance(value, float):
                value = f"{value:.3f}"
            cells.append("-" if value is None else str(value))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def bench(args: argparse.Namespace) -> int:
    config = _config(args)
    benchmark = Benchmark(config=config)
    rows = benchmark.evaluate()
    sys.stdout.write(_format_table(rows))
    slopes = {}
    for family in sorted({row["family"] for row in rows}):
        if sum(row["family"] == family for row in rows) > 1:
            slopes[family] = benchmark.regression_slope(rows, family)
            sys.stdout.write(
                f"slope {family}: {slopes[family]:.3f} (reads vs n, log-log)\n"
            )
    oracle = benchmark.oracle_timings()
    for row in oracle:
        sys.stdout.write(
            f"oracle {row['family']} n={row['n']}: {row['wall_ms']:.1f} ms\n"
        )
    if args.stats:
        _write_json(
            args.stats, {"rows": rows, "slopes": slopes, "oracle": oracle}
        )
    return 0


def check(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = Corpus(
        list(fixed_corpus())
        + list(
            random_corpus(
                config.CHECK.NUM_RANDOM,
                seed=config.SEED,
                min_vertices=config.CHECK.MIN_VERTICES,
                max_vertices=config.CHECK.MAX_VERTICES,
            )
        )
    )
    archive_dir = args.archive_dir or config.CHECK.ARCHIVE_DIR
    report = Benchmark(config=config).check(corpus, archive_dir)
    sys.stdout.write(
        f"{report.instances} instances: {report.match} match, "
        f"{report.discrepancy} discrepancy, {report.failure} failure "
        f"(discrepancy rate {report.discrepancy_rate:.4f})\n"
    )
    if args.stats:
        _write_json(args.stats, report.to_dict())
    return 3 if report.failure else 0


_COMMANDS = {"run": run, "generate": generate, "bench": bench, "check": check}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except VisibilityError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except OSError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
