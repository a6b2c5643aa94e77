#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Visibility of one chain: the boundary arc between two consecutive
effective critical vertices.

Only the endpoints can cast windows into the chain. A critical-max start
hides the stretch right after it up to ``A``, the first point its ray
strikes beyond it; a critical-min end hides the stretch right before it from
``B``. Everything between ``A`` and ``B`` is visible. The first pass finds
the window distances, the second pass re-identifies the window edges by
those distances and writes the visible part.
"""

import math
from typing import Optional

import attr

from visarea.core.errors import WindowNotFound
from visarea.core.geometry import Point, RayHit, ray_hit
from visarea.core.polygon import CriticalKind, PolygonInput, VertexReader
from visarea.core.workspace import SinkWriter, WorkspaceMeter

WINDOW_MATCH_TOLERANCE = 1e-9
DEDUP_TOLERANCE = 1e-12

_CHAIN_SLOTS = 16


@attr.s(auto_attribs=True, frozen=True, slots=True)
class Chain:
    r"""Boundary indices ``start .. end`` counterclockwise, with the kinds of
    the two effective endpoints. ``start == end`` is the single-chain case
    that runs once around the boundary."""
    start: int
    end: int
    start_kind: CriticalKind = CriticalKind.NOT_CRITICAL
    end_kind: CriticalKind = CriticalKind.NOT_CRITICAL

    def length(self, n: int) -> int:
        r"""Number of edges in the chain."""
        return (self.end - self.start) % n or n

    @property
    def opens_window(self) -> bool:
        return self.start_kind is CriticalKind.CRITICAL_MAX

    @property
    def closes_window(self) -> bool:
        return self.end_kind is CriticalKind.CRITICAL_MIN


@attr.s(auto_attribs=True, frozen=True, slots=True)
class ChainWindow:
    a: Point
    b: Point
    min1: float
    min2: float


def _beyond(q: Point, p: Point, seg, rho_p: float) -> Optional[RayHit]:
    hit = ray_hit(q, p, seg)
    if hit is None or hit.rho <= rho_p:
        return None
    return hit


def _matches(rho: float, target: float, tolerance: float) -> bool:
    return abs(rho - target) <= tolerance * target


def chain_window(
    polygon: PolygonInput,
    chain: Chain,
    meter: Optional[WorkspaceMeter] = None,
) -> ChainWindow:
    r"""First pass over the chain: the window points ``A`` and ``B``.

    :raise WindowNotFound: an endpoint should cast a window but its ray
        strikes no chain edge beyond it; the flags upstream are wrong.
    """
    reader = polygon.reader(meter)
    return _chain_window(reader, polygon.viewpoint, chain)


def _chain_window(
    reader: VertexReader, q: Point, chain: Chain
) -> ChainWindow:
    n = len(reader)
    with reader.meter.scalars(_CHAIN_SLOTS):
        p_i = reader[chain.start]
        p_j = reader[chain.end]
        rho_i = math.hypot(p_i.x - q.x, p_i.y - q.y)
        rho_j = math.hypot(p_j.x - q.x, p_j.y - q.y)
        a: Optional[RayHit] = None
        b: Optional[RayHit] = None
        v = p_i
        for step in range(chain.length(n)):
            w = reader[chain.start + step + 1]
            if chain.opens_window:
                hit = _beyond(q, p_i, (v, w), rho_i)
                if hit is not None and (a is None or hit.rho < a.rho):
                    a = hit
            if chain.closes_window:
                hit = _beyond(q, p_j, (v, w), rho_j)
                if hit is not None and (b is None or hit.rho < b.rho):
                    b = hit
            v = w
    if chain.opens_window and a is None:
        raise WindowNotFound(
            "critical-max chain start casts no window",
            indices=(chain.start,),
        )
    if chain.closes_window and b is None:
        raise WindowNotFound(
            "critical-min chain end casts no window", indices=(chain.end,)
        )
    return ChainWindow(
        a=a.point if a is not None else p_i,
        b=b.point if b is not None else p_j,
        min1=a.rho if a is not None else rho_i,
        min2=b.rho if b is not None else rho_j,
    )


class _DedupWriter:
    r"""Drops a point equal, within tolerance, to the one written just
    before it."""

    __slots__ = ("_writer", "_tolerance", "_last")

    def __init__(self, writer: SinkWriter, tolerance: float):
        self._writer = writer
        self._tolerance = tolerance
        self._last: Optional[Point] = None

    def write(self, p: Point) -> None:
        last = self._last
        if last is not None and math.hypot(
            p.x - last.x, p.y - last.y
        ) <= self._tolerance * max(1.0, abs(p.x), abs(p.y)):
            return
        self._writer.write(p)
        self._last = p


def emit_chain_visibility(
    polygon: PolygonInput,
    chain: Chain,
    sink: SinkWriter,
    meter: Optional[WorkspaceMeter] = None,
    skip_start: bool = False,
    skip_end: bool = False,
    match_tolerance: float = WINDOW_MATCH_TOLERANCE,
    dedup_tolerance: float = DEDUP_TOLERANCE,
) -> ChainWindow:
    r"""Write the visible part of :p:`chain` to :p:`sink`, counterclockwise:
    ``p_i``, ``A``, the chain vertices between ``A`` and ``B``, ``B``,
    ``p_j``.

    :param skip_start: leave out ``p_i`` (already written by the previous
        chain).
    :param skip_end: leave out ``p_j`` (the first chain will write it).
    :return: the window found by the first pass.
    """
    reader = polygon.reader(meter)
    q = polygon.viewpoint
    n = len(reader)
    window = _chain_window(reader, q, chain)
    out = _DedupWriter(sink, dedup_tolerance)

    with reader.meter.scalars(_CHAIN_SLOTS):
        p_i = reader[chain.start]
        p_j = reader[chain.end]
        rho_i = math.hypot(p_i.x - q.x, p_i.y - q.y)
        rho_j = math.hypot(p_j.x - q.x, p_j.y - q.y)
        if not skip_start:
            out.write(p_i)
        past_a = not chain.opens_window
        length = chain.length(n)
        v = p_i
        for step in range(length):
            w = reader[chain.start + step + 1]
            if not past_a:
                hit = _beyond(q, p_i, (v, w), rho_i)
                if hit is None or not _matches(
                    hit.rho, window.min1, match_tolerance
                ):
                    v = w
                    continue
                out.write(hit.point)
                past_a = True
            if chain.closes_window:
                hit = _beyond(q, p_j, (v, w), rho_j)
                if hit is not None and _matches(
                    hit.rho, window.min2, match_tolerance
                ):
                    out.write(hit.point)
                    break
            if step == length - 1:
                break
            out.write(w)
            v = w
        if not skip_end:
            out.write(p_j)
    return window
