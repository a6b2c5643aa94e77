#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Effective (visible) critical vertices with ``c`` flag bits and a constant
number of scalars.

The critical vertices are numbered counterclockwise from the start vertex
(minimum angle about the viewpoint); bit ``k`` of :ref:`EffectiveFlags`
belongs to the ``k``-th of them. All bits start set. Two sweeps clear the
criticals passed while the boundary regresses in angle behind a critical
vertex, and a merge over the survivors clears whatever still breaks the
ascending angular order.

Each sweep walks the boundary twice so a regression that starts near the end
of the first cycle finishes across the start vertex.
"""

import math
from enum import Enum
from typing import Iterator, List, Optional, Tuple

import numpy as np

from visarea.core.errors import DegeneratePosition, PipelineDiscrepancy
from visarea.core.geometry import Point, polar_angle, ray_hit, unwind
from visarea.core.logging import logger
from visarea.core.polygon import (
    CriticalConvention,
    CriticalKind,
    PolygonInput,
    VertexReader,
    critical_count,
    critical_kind,
)
from visarea.core.workspace import WorkspaceMeter

# declared word-sized scalars per routine; points count as two words
_WALKER_SLOTS = 10
_SWEEP_SLOTS = 4
_MERGE_SLOTS = 7
_CONFLICT_SLOTS = 9
_COMPUTE_SLOTS = 4
_EXTREMES_SLOTS = 8


class PipelineMode(Enum):
    STRICT_PAPER = "strict-paper"
    VALIDATED = "validated"


class EffectiveFlags:
    r"""Packed bit array ``W`` over the critical vertices.

    :property start_index: boundary index the critical numbering starts at.
    :property end_index: boundary index of the maximum-angle vertex, where
        the backward sweep starts.
    :property end_rank: number of critical vertices counterclockwise from
        :py:`start_index` up to (excluding) :py:`end_index`; recorded by the
        forward sweep.

    Bits are only ever cleared.
    """

    def __init__(
        self,
        size: int,
        start_index: int,
        convention: CriticalConvention = CriticalConvention.REFLEX,
        end_index: Optional[int] = None,
    ) -> None:
        self._size = size
        self._bits = np.full((size + 7) // 8, 0xFF, dtype=np.uint8)
        if size % 8:
            self._bits[-1] = (1 << (size % 8)) - 1
        self._count = size
        self.start_index = start_index
        self.end_index = end_index
        self.end_rank: Optional[int] = None
        self.convention = convention

    @classmethod
    def allocate(
        cls,
        size: int,
        start_index: int,
        meter: Optional[WorkspaceMeter] = None,
        convention: CriticalConvention = CriticalConvention.REFLEX,
    ) -> "EffectiveFlags":
        if meter is not None:
            meter.allocate_flags(size)
        return cls(size, start_index, convention)

    @property
    def size(self) -> int:
        return self._size

    @property
    def count_effective(self) -> int:
        return self._count

    def __len__(self) -> int:
        return self._size

    def __getitem__(self, k: int) -> bool:
        if not 0 <= k < self._size:
            raise IndexError(f"flag {k} out of range for {self._size} bits")
        return bool(self._bits[k >> 3] >> (k & 7) & 1)

    def clear(self, k: int) -> bool:
        r"""Clear bit :p:`k`; returns whether it was set."""
        if not self[k]:
            return False
        self._bits[k >> 3] &= np.uint8(~(1 << (k & 7)) & 0xFF)
        self._count -= 1
        return True

    def set_bits(self) -> List[int]:
        return [k for k in range(self._size) if self[k]]

    def __repr__(self) -> str:
        bits = "".join("1" if self[k] else "0" for k in range(self._size))
        return (
            f"EffectiveFlags(start_index={self.start_index}, bits={bits!r})"
        )


class BoundaryWalker:
    r"""Sliding ``(prev, cur, nxt)`` window over the boundary, stepping
    counterclockwise (``step=1``) or clockwise (``step=-1``), with the
    locally unwound angle of ``cur``. One vertex read per advance."""

    __slots__ = (
        "_reader",
        "_q",
        "_step",
        "_convention",
        "_kind",
        "index",
        "prev",
        "cur",
        "nxt",
        "theta",
    )

    def __init__(
        self,
        reader: VertexReader,
        q: Point,
        index: int,
        step: int,
        convention: CriticalConvention,
        theta: Optional[float] = None,
    ) -> None:
        self._reader = reader
        self._q = q
        self._step = step
        self._convention = convention
        self._kind: Optional[CriticalKind] = None
        self.index = index % len(reader)
        self.prev = reader[index - 1]
        self.cur = reader[index]
        self.nxt = reader[index + 1]
        self.theta = polar_angle(q, self.cur)
        if theta is not None:
            self.theta = unwind(self.theta, theta)

    def kind(self) -> CriticalKind:
        if self._kind is None:
            try:
                self._kind = critical_kind(
                    self._q, self.prev, self.cur, self.nxt, self._convention
                )
            except DegeneratePosition as exc:
                raise DegeneratePosition(
                    str(exc), indices=(self.index,)
                ) from exc
        return self._kind

    @property
    def critical(self) -> bool:
        return self.kind() is not CriticalKind.NOT_CRITICAL

    def advance(self) -> None:
        n = len(self._reader)
        if self._step > 0:
            self.index = (self.index + 1) % n
            self.prev, self.cur = self.cur, self.nxt
            self.nxt = self._reader[self.index + 1]
        else:
            self.index = (self.index - 1) % n
            self.nxt, self.cur = self.cur, self.prev
            self.prev = self._reader[self.index - 1]
        self.theta = unwind(polar_angle(self._q, self.cur), self.theta)
        self._kind = None


def _angular_extremes(
    polygon: PolygonInput, meter: Optional[WorkspaceMeter] = None
) -> Tuple[int, int]:
    r"""Indices of the minimum- and maximum-angle vertices, in one pass.
    Ties go to the smaller distance, then the smaller index."""
    reader = polygon.reader(meter)
    q = polygon.viewpoint
    with reader.meter.scalars(_EXTREMES_SLOTS):
        lo = hi = 0
        lo_key = hi_key = None
        for i in range(len(reader)):
            p = reader[i]
            theta = polar_angle(q, p)
            rho = math.hypot(p.x - q.x, p.y - q.y)
            if lo_key is None or (theta, rho) < lo_key:
                lo, lo_key = i, (theta, rho)
            if hi_key is None or (-theta, rho) < hi_key:
                hi, hi_key = i, (-theta, rho)
    return lo, hi


def start_vertex(
    polygon: PolygonInput, meter: Optional[WorkspaceMeter] = None
) -> int:
    r"""Index of the vertex with minimum angle about the viewpoint; ties
    broken by smaller distance, then smaller index."""
    return _angular_extremes(polygon, meter)[0]


def forward_sweep(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    meter: Optional[WorkspaceMeter] = None,
) -> None:
    r"""Counterclockwise sweep from the start vertex.

    After a critical-max the boundary may turn back in angle; every critical
    vertex passed before the angle climbs past the critical-max again is
    cleared. A critical-max met during such a regression does not start one
    of its own.
    """
    c = flags.size
    if c == 0:
        return
    reader = polygon.reader(meter)
    n = len(reader)
    with reader.meter.scalars(_WALKER_SLOTS + _SWEEP_SLOTS):
        walker = BoundaryWalker(
            reader,
            polygon.viewpoint,
            flags.start_index,
            step=1,
            convention=flags.convention,
        )
        rank = 0
        peak: Optional[float] = None
        for step in range(2 * n):
            if step < n and walker.index == flags.end_index:
                flags.end_rank = rank % c
            if peak is not None and walker.theta > peak:
                peak = None
            if walker.critical:
                if peak is not None:
                    flags.clear(rank % c)
                elif walker.kind() is CriticalKind.CRITICAL_MAX:
                    peak = walker.theta
                rank += 1
            walker.advance()


def _locate_end_rank(
    polygon: PolygonInput, flags: EffectiveFlags, reader: VertexReader
) -> int:
    walker = BoundaryWalker(
        reader,
        polygon.viewpoint,
        flags.start_index,
        step=1,
        convention=flags.convention,
    )
    rank = 0
    while walker.index != flags.end_index:
        if walker.critical:
            rank += 1
        walker.advance()
    return rank % flags.size


def backward_sweep(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    meter: Optional[WorkspaceMeter] = None,
) -> None:
    r"""Clockwise mirror of :ref:`forward_sweep`, from the maximum-angle
    vertex: after a critical-min, every critical vertex passed while the
    angle stays above it is cleared. Bit addresses count down."""
    c = flags.size
    if c == 0:
        return
    reader = polygon.reader(meter)
    n = len(reader)
    with reader.meter.scalars(_WALKER_SLOTS + _SWEEP_SLOTS):
        if flags.end_index is None:
            flags.end_index = _angular_extremes(polygon, reader.meter)[1]
        if flags.end_rank is None:
            flags.end_rank = _locate_end_rank(polygon, flags, reader)
        walker = BoundaryWalker(
            reader,
            polygon.viewpoint,
            flags.end_index,
            step=-1,
            convention=flags.convention,
        )
        # criticals strictly before cur, counterclockwise from the start
        rank = flags.end_rank
        trough: Optional[float] = None
        for _ in range(2 * n):
            if trough is not None and walker.theta < trough:
                trough = None
            if walker.critical:
                if trough is not None:
                    flags.clear(rank % c)
                elif walker.kind() is CriticalKind.CRITICAL_MIN:
                    trough = walker.theta
            walker.advance()
            if walker.critical:
                rank -= 1


def _occluded_of(
    reader: VertexReader,
    q: Point,
    first: Tuple[int, Point],
    second: Tuple[int, Point],
) -> int:
    r"""Which of two flagged criticals whose angular order conflicts is
    hidden. Returns the boundary index of the hidden one.

    The ray toward one vertex is intersected with the edges incident to the
    other: a hit nearer than the vertex means those edges block it, a hit
    beyond it means they lie behind it.
    """
    with reader.meter.scalars(_CONFLICT_SLOTS):
        for (i, p), (j, other) in ((first, second), (second, first)):
            rho_p = math.hypot(p.x - q.x, p.y - q.y)
            nearest = None
            for seg in ((reader[j - 1], other), (other, reader[j + 1])):
                hit = ray_hit(q, p, seg)
                if hit is None or hit.point == p:
                    continue
                if nearest is None or hit.rho < nearest:
                    nearest = hit.rho
            if nearest is None:
                continue
            if nearest == rho_p:
                raise DegeneratePosition(
                    "conflicting criticals at equal shadow distance",
                    indices=(i, j),
                )
            return j if nearest > rho_p else i
        (i, p), (j, other) = first, second
        rho_i = math.hypot(p.x - q.x, p.y - q.y)
        rho_j = math.hypot(other.x - q.x, other.y - q.y)
        if rho_i == rho_j:
            raise DegeneratePosition(
                "conflicting criticals at equal distance", indices=(i, j)
            )
        return i if rho_i > rho_j else j


def _flagged(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    reader: VertexReader,
    step: int,
) -> Iterator[Tuple[int, BoundaryWalker]]:
    r"""Flagged critical vertices over one boundary cycle, as
    ``(bit, walker)``; the walker's angle is unwound consistently with a
    counterclockwise pass from the start vertex."""
    c = flags.size
    n = len(reader)
    q = polygon.viewpoint
    if step > 0:
        walker = BoundaryWalker(
            reader, q, flags.start_index, 1, flags.convention
        )
        rank = 0
        for _ in range(n):
            if walker.critical:
                if flags[rank]:
                    yield rank, walker
                rank += 1
            walker.advance()
    else:
        start_theta = polar_angle(q, reader[flags.start_index])
        walker = BoundaryWalker(
            reader,
            q,
            flags.start_index - 1,
            -1,
            flags.convention,
            theta=start_theta + 2.0 * math.pi,
        )
        rank = c
        for _ in range(n):
            if walker.critical:
                rank -= 1
                if flags[rank]:
                    yield rank, walker
            walker.advance()


def merge_effective(
    polygon: PolygonInput,
    flags: EffectiveFlags,
    meter: Optional[WorkspaceMeter] = None,
) -> None:
    r"""Clear flagged criticals until their angles ascend counterclockwise
    from the start vertex.

    A counterclockwise pass keeps a running maximum and a clockwise pass a
    running minimum; a vertex that breaks the order is matched against the
    reference it conflicts with and :ref:`_occluded_of` decides which one is
    cleared. A last counterclockwise pass clears anything still out of
    order.
    """
    if flags.count_effective < 2:
        return
    reader = polygon.reader(meter)
    q = polygon.viewpoint
    with reader.meter.scalars(_WALKER_SLOTS + _MERGE_SLOTS):
        for step in (1, -1):
            ref: Optional[Tuple[int, int, float, Point]] = None
            for rank, walker in _flagged(polygon, flags, reader, step):
                if ref is None or (walker.theta - ref[2]) * step > 0:
                    ref = (rank, walker.index, walker.theta, walker.cur)
                    continue
                hidden = _occluded_of(
                    reader,
                    q,
                    (ref[1], ref[3]),
                    (walker.index, walker.cur),
                )
                logger.debug(
                    "merge: criticals %d and %d out of order, clearing %d",
                    ref[1],
                    walker.index,
                    hidden,
                )
                if hidden == walker.index:
                    flags.clear(rank)
                else:
                    flags.clear(ref[0])
                    ref = (rank, walker.index, walker.theta, walker.cur)

        running: Optional[float] = None
        for rank, walker in _flagged(polygon, flags, reader, 1):
            if running is not None and walker.theta <= running:
                logger.warning(
                    "merge: critical %d still out of order, cleared",
                    walker.index,
                )
                flags.clear(rank)
            else:
                running = walker.theta


def _confirm_flags(polygon: PolygonInput, flags: EffectiveFlags) -> None:
    # the oracle imports nothing from the pipeline
    from visarea.oracle.reference import visible_from

    points = polygon.points
    n = len(points)
    q = polygon.viewpoint
    disagreeing = []
    rank = 0
    for k in range(n):
        i = (flags.start_index + k) % n
        kind = critical_kind(
            q, points[i - 1], points[i], points[(i + 1) % n], flags.convention
        )
        if kind is CriticalKind.NOT_CRITICAL:
            continue
        if flags[rank] != visible_from(polygon, points[i]):
            disagreeing.append(i)
        rank += 1
    if disagreeing:
        raise PipelineDiscrepancy(
            f"{len(disagreeing)} critical vertices flagged wrongly",
            indices=sorted(disagreeing),
        )


def compute_effective(
    polygon: PolygonInput,
    mode: PipelineMode = PipelineMode.STRICT_PAPER,
    meter: Optional[WorkspaceMeter] = None,
    convention: CriticalConvention = CriticalConvention.REFLEX,
) -> EffectiveFlags:
    r"""Flag the visible critical vertices.

    :param mode: :py:`PipelineMode.VALIDATED` additionally checks every
        critical vertex against a segment-visibility test over the whole
        boundary (quadratic) and reports disagreement.
    :raise PipelineDiscrepancy: validated mode only; carries the boundary
        indices whose flag disagrees with the visibility test.
    """
    meter = meter if meter is not None else WorkspaceMeter()
    with meter.scalars(_COMPUTE_SLOTS):
        c = critical_count(polygon, meter, convention)
        start, end = _angular_extremes(polygon, meter)
        flags = EffectiveFlags.allocate(c, start, meter, convention)
        flags.end_index = end
        forward_sweep(polygon, flags, meter)
        backward_sweep(polygon, flags, meter)
        merge_effective(polygon, flags, meter)
    logger.debug(
        "effective criticals: %d of %d (n=%d)",
        flags.count_effective,
        c,
        len(polygon),
    )
    if mode is PipelineMode.VALIDATED:
        try:
            _confirm_flags(polygon, flags)
        except PipelineDiscrepancy as exc:
            exc.flags = flags
            raise
    return flags
