#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Full pipeline: effective criticals, then one chain per pair of
consecutive effective criticals, written in counterclockwise order.

The output starts at the first effective critical vertex at or after the
start vertex, or at the start vertex itself when no critical vertex is
visible.
"""

import time
from typing import Iterator, Optional, Tuple

from visarea.algorithms.chain import (
    DEDUP_TOLERANCE,
    WINDOW_MATCH_TOLERANCE,
    Chain,
    emit_chain_visibility,
)
from visarea.algorithms.effective import (
    BoundaryWalker,
    EffectiveFlags,
    PipelineMode,
    compute_effective,
)
from visarea.core.engine import Engine, RunStats
from visarea.core.errors import PipelineDiscrepancy, VisibilityError
from visarea.core.logging import logger
from visarea.core.polygon import (
    CriticalConvention,
    CriticalKind,
    PolygonInput,
)
from visarea.core.registry import registry
from visarea.core.workspace import OutputSink, SinkWriter, WorkspaceMeter

# chain iteration: walker, rank, first and previous critical, chain count
_DRIVER_SLOTS = 16


def effective_criticals(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    meter: Optional[WorkspaceMeter] = None,
) -> Iterator[Tuple[int, CriticalKind]]:
    r"""Boundary index and kind of every flagged critical vertex,
    counterclockwise from the start vertex. Lazy; one vertex read per
    boundary step."""
    reader = polygon.reader(meter)
    walker = BoundaryWalker(
        reader,
        polygon.viewpoint,
        flags.start_index,
        step=1,
        convention=flags.convention,
    )
    rank = 0
    for _ in range(len(reader)):
        if walker.critical:
            if flags[rank]:
                yield walker.index, walker.kind()
            rank += 1
        walker.advance()


def chains(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    meter: Optional[WorkspaceMeter] = None,
) -> Iterator[Chain]:
    r"""Chains between consecutive effective criticals; the last one closes
    the cycle back to the first. A single effective critical yields one
    chain around the whole boundary."""
    criticals = effective_criticals(polygon, flags, meter)
    first = next(criticals, None)
    if first is None:
        return
    prev = first
    for cur in criticals:
        yield Chain(prev[0], cur[0], prev[1], cur[1])
        prev = cur
    yield Chain(prev[0], first[0], prev[1], first[1])


def _copy_boundary(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    writer: SinkWriter,
    meter: WorkspaceMeter,
) -> None:
    reader = polygon.reader(meter)
    for k in range(len(reader)):
        writer.write(reader[flags.start_index + k])


def visibility_polygon(
    polygon: PolygonInput,
    sink: OutputSink,
    mode: PipelineMode = PipelineMode.STRICT_PAPER,
    meter: Optional[WorkspaceMeter] = None,
    convention: CriticalConvention = CriticalConvention.REFLEX,
    match_tolerance: float = WINDOW_MATCH_TOLERANCE,
    dedup_tolerance: float = DEDUP_TOLERANCE,
) -> RunStats:
    r"""Write the visibility polygon of :p:`polygon` to :p:`sink`,
    counterclockwise.

    Each chain writes its start vertex except the first chain's, which the
    last chain leaves to it; consecutive chains share one endpoint.

    :param polygon: validated input.
    :param sink: receives the points through a :ref:`SinkWriter`; the
        pipeline never reads it back.
    :raise VisibilityError: on any failure. The partially filled stats, with
        ``partial_output`` set, are attached to the error as ``stats``.
    """
    meter = meter if meter is not None else WorkspaceMeter()
    stats = RunStats(n=len(polygon), engine="constrained", mode=mode.value)
    writer = sink.writer(meter)
    started = time.perf_counter()
    try:
        flags = compute_effective(polygon, mode, meter, convention)
        stats.c = flags.size
        stats.c_effective = flags.count_effective
        with meter.scalars(_DRIVER_SLOTS):
            if flags.count_effective == 0:
                _copy_boundary(polygon, flags, writer, meter)
            else:
                last = flags.count_effective - 1
                for k, chain in enumerate(chains(polygon, flags, meter)):
                    emit_chain_visibility(
                        polygon,
                        chain,
                        writer,
                        meter,
                        skip_start=k > 0,
                        skip_end=k == last,
                        match_tolerance=match_tolerance,
                        dedup_tolerance=dedup_tolerance,
                    )
    except VisibilityError as exc:
        stats.partial_output = True
        if isinstance(exc, PipelineDiscrepancy):
            stats.discrepancies = list(exc.indices)
            if isinstance(exc.flags, EffectiveFlags):
                stats.c = exc.flags.size
                stats.c_effective = exc.flags.count_effective
        exc.stats = stats
        raise
    finally:
        stats.wall_ms = (time.perf_counter() - started) * 1000.0
        stats.meter = meter.snapshot()

    logger.debug(
        "visibility polygon: n=%d c=%d effective=%d reads=%d",
        stats.n,
        stats.c,
        stats.c_effective,
        meter.vertex_reads,
    )
    return stats


@registry.register_engine(name="constrained")
class ConstrainedEngine(Engine):
    r"""Linear-time pipeline under the constrained workspace."""

    name = "constrained"

    def run(
        self,
        polygon: PolygonInput,
        sink: OutputSink,
        meter: Optional[WorkspaceMeter] = None,
    ) -> RunStats:
        config = self.config
        return visibility_polygon(
            polygon,
            sink,
            mode=PipelineMode(config.MODE),
            meter=meter,
            convention=CriticalConvention(
                config.POLYGON.CRITICAL_CONVENTION
            ),
            match_tolerance=config.GEOMETRY.WINDOW_MATCH_TOLERANCE,
            dedup_tolerance=config.GEOMETRY.DEDUP_TOLERANCE,
        )
