#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Ground truth for the pipeline: quadratic ray casting with unbounded
workspace. Shares only the geometry kernel with :py:`visarea.algorithms`.
"""

import math
import time
from typing import List, Optional, Sequence

import numpy as np

from visarea.core.engine import Engine, RunStats
from visarea.core.errors import DegenerateInput, DegeneratePosition
from visarea.core.geometry import (
    Orientation,
    Point,
    orientation,
    polar_angle,
    ray_hit,
    shadow_point,
)
from visarea.core.polygon import (
    CriticalConvention,
    CriticalKind,
    PolygonInput,
    critical_kind,
)
from visarea.core.registry import registry
from visarea.core.workspace import OutputSink, WorkspaceMeter

# relative slack on the ray parameter for "strictly before the vertex"
_HIDDEN_SLACK = 1e-9


def visible_from(polygon: PolygonInput, p: Point) -> bool:
    r"""Whether the segment from the viewpoint to :p:`p` meets the boundary
    only at :p:`p`.

    :raise DegeneratePosition: an edge overlaps the segment's line.
    """
    q = polygon.viewpoint
    rho_p = math.hypot(p.x - q.x, p.y - q.y)
    limit = rho_p * (1.0 - _HIDDEN_SLACK)
    try:
        for seg in polygon.edges():
            hit = ray_hit(q, p, seg)
            if hit is not None and hit.rho < limit:
                return False
    except DegenerateInput as exc:
        raise DegeneratePosition(str(exc), indices=exc.indices) from exc
    return True


def _kinds(
    polygon: PolygonInput, convention: CriticalConvention
) -> List[CriticalKind]:
    points = polygon.points
    n = len(points)
    q = polygon.viewpoint
    kinds = []
    for i in range(n):
        prev, cur, nxt = points[i - 1], points[i], points[(i + 1) % n]
        try:
            kinds.append(critical_kind(q, prev, cur, nxt, convention))
        except DegeneratePosition as exc:
            raise DegeneratePosition(str(exc), indices=(i,)) from exc
    return kinds


def visible_critical_indices(
    polygon: PolygonInput,
    convention: CriticalConvention = CriticalConvention.REFLEX,
) -> List[int]:
    r"""Indices of the critical vertices visible from the viewpoint, in
    boundary order."""
    points = polygon.points
    return [
        i
        for i, kind in enumerate(_kinds(polygon, convention))
        if kind is not CriticalKind.NOT_CRITICAL
        and visible_from(polygon, points[i])
    ]


def visibility_mask(polygon: PolygonInput) -> np.ndarray:
    r"""Boolean array: vertex ``i`` is visible from the viewpoint.

    One vectorized ray cast per vertex against every edge.
    """
    q = np.array(polygon.viewpoint.as_tuple())
    a = polygon.vertices
    e = np.roll(a, -1, axis=0) - a
    w = a - q
    visible = np.ones(len(a), dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i, v in enumerate(a):
            d = v - q
            denom = d[0] * e[:, 1] - d[1] * e[:, 0]
            t = (w[:, 0] * e[:, 1] - w[:, 1] * e[:, 0]) / denom
            u = (w[:, 0] * d[1] - w[:, 1] * d[0]) / denom
            blocked = (
                (denom != 0.0)
                & (u >= 0.0)
                & (u <= 1.0)
                & (t > 0.0)
                & (t < 1.0 - _HIDDEN_SLACK)
            )
            visible[i] = not blocked.any()
    return visible


def brute_force_visibility(polygon: PolygonInput) -> List[Point]:
    r"""Visibility polygon by angular ray casting, counterclockwise from
    angle zero.

    Every visible vertex is emitted at its angle. A visible vertex with both
    neighbours on the same side of its ray also casts a window: its shadow
    follows it when the neighbours lie clockwise of the ray, and precedes it
    when they lie counterclockwise.

    :raise DegeneratePosition: a shadow ray grazes another vertex or runs
        along an edge.
    """
    points = polygon.points
    n = len(points)
    q = polygon.viewpoint
    edges = list(polygon.edges())
    entries = []
    for i in np.nonzero(visibility_mask(polygon))[0]:
        i = int(i)
        v = points[i]
        before = orientation(q, v, points[i - 1])
        after = orientation(q, v, points[(i + 1) % n])
        run = [v]
        if before is after and before is not Orientation.COLLINEAR:
            try:
                shadow = shadow_point(q, v, edges)
            except DegenerateInput as exc:
                raise DegeneratePosition(str(exc), indices=(i,)) from exc
            if shadow is None:
                raise DegeneratePosition(
                    f"visible reflex vertex {v} casts no shadow",
                    indices=(i,),
                )
            if before is Orientation.CLOCKWISE_TURN:
                run = [v, shadow.point]
            else:
                run = [shadow.point, v]
        entries.append((polar_angle(q, v), run))
    entries.sort(key=lambda entry: entry[0])
    return [p for _, run in entries for p in run]


def _diameter(points: np.ndarray) -> float:
    return float(np.hypot(*(points.max(axis=0) - points.min(axis=0))))


def _drop_collinear(points: np.ndarray, area_tol: float) -> np.ndarray:
    while len(points) > 3:
        prev = np.roll(points, 1, axis=0)
        nxt = np.roll(points, -1, axis=0)
        area = 0.5 * np.abs(
            (points[:, 0] - prev[:, 0]) * (nxt[:, 1] - prev[:, 1])
            - (points[:, 1] - prev[:, 1]) * (nxt[:, 0] - prev[:, 0])
        )
        flat = np.nonzero(area < area_tol)[0]
        if not len(flat):
            break
        # one point at a time, its neighbours' areas change
        points = np.delete(points, flat[0], axis=0)
    return points


def compare_cyclic(
    a: Sequence[Point],
    b: Sequence[Point],
    tol: float = 1e-9,
    collinear_tolerance: float = 1e-12,
) -> bool:
    r"""Whether :p:`a` and :p:`b` describe the same polygon up to rotation
    of the starting point.

    Consecutive collinear points (triangle area below
    :p:`collinear_tolerance` times the squared diameter) are dropped from
    both first; then some rotation must match pointwise within :p:`tol`
    times the diameter.
    """
    if not a or not b:
        return not a and not b
    pa = np.array([p.as_tuple() for p in a], dtype=np.float64)
    pb = np.array([p.as_tuple() for p in b], dtype=np.float64)
    diam = _diameter(np.concatenate([pa, pb])) or 1.0
    pa = _drop_collinear(pa, collinear_tolerance * diam * diam)
    pb = _drop_collinear(pb, collinear_tolerance * diam * diam)
    if len(pa) != len(pb):
        return False
    limit = tol * diam
    starts = np.nonzero(np.hypot(*(pb - pa[0]).T) <= limit)[0]
    for r in starts:
        shifted = np.roll(pb, -int(r), axis=0)
        if np.all(np.hypot(*(shifted - pa).T) <= limit):
            return True
    return False


@registry.register_engine(name="oracle")
class OracleEngine(Engine):
    r"""Quadratic brute force; ignores ``MODE``."""

    name = "oracle"

    def run(
        self,
        polygon: PolygonInput,
        sink: OutputSink,
        meter: Optional[WorkspaceMeter] = None,
    ) -> RunStats:
        meter = meter if meter is not None else WorkspaceMeter()
        convention = CriticalConvention(
            self.config.POLYGON.CRITICAL_CONVENTION
        )
        stats = RunStats(n=len(polygon), engine=self.name, mode="n/a")
        started = time.perf_counter()
        writer = sink.writer(meter)
        for p in brute_force_visibility(polygon):
            writer.write(p)
        kinds = _kinds(polygon, convention)
        critical = np.array(
            [kind is not CriticalKind.NOT_CRITICAL for kind in kinds]
        )
        stats.c = int(critical.sum())
        stats.c_effective = int((critical & visibility_mask(polygon)).sum())
        stats.wall_ms = (time.perf_counter() - started) * 1000.0
        stats.meter = meter.snapshot()
        return stats
