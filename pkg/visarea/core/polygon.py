#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Input model: a read-only counterclockwise vertex array plus an interior
viewpoint, critical-vertex classification, validation and the polygon file
format.

Polygon files are UTF-8 text: line 1 holds the vertex count ``n``, lines
``2..n+1`` hold ``x y`` in counterclockwise order, and one optional further
line ``x y`` holds the viewpoint.
"""

import math
import os
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import attr
import numpy as np

from visarea.core.errors import (
    DegeneratePosition,
    InvalidPolygon,
    NotCcw,
    NotSimple,
    PolygonFormatError,
    ViewpointOutside,
)
from visarea.core.geometry import (
    Orientation,
    Point,
    orientation,
    segments_intersect,
)
from visarea.core.workspace import WorkspaceMeter

PathLike = Union[str, "os.PathLike[str]"]

# row block for the pairwise edge test, bounds its temporary arrays
_SIMPLICITY_BLOCK = 256


class CriticalKind(Enum):
    CRITICAL_MAX = "critical-max"
    CRITICAL_MIN = "critical-min"
    NOT_CRITICAL = "not-critical"


class CriticalConvention(Enum):
    r"""Which turn a critical vertex must make.

    ``REFLEX`` requires a clockwise (reflex) turn for both kinds. ``PAPER``
    accepts a counterclockwise turn at critical-min vertices and is only
    useful for comparison runs.
    """
    REFLEX = "reflex"
    PAPER = "paper"


def _as_vertex_array(value) -> np.ndarray:
    vertices = np.array(value, dtype=np.float64)
    if vertices.ndim != 2 or vertices.shape[1] != 2:
        raise InvalidPolygon(
            f"vertices must be an (n, 2) array, got shape {vertices.shape}"
        )
    if vertices.shape[0] < 3:
        raise InvalidPolygon(
            f"a polygon needs at least 3 vertices, got {vertices.shape[0]}"
        )
    if not np.all(np.isfinite(vertices)):
        bad = np.nonzero(~np.all(np.isfinite(vertices), axis=1))[0]
        raise InvalidPolygon("non-finite vertex coordinates", indices=bad)
    vertices.setflags(write=False)
    return vertices


@attr.s(auto_attribs=True, frozen=True, slots=True, eq=False, repr=False)
class PolygonInput:
    r"""Read-only vertex sequence and viewpoint.

    :property vertices: ``(n, 2)`` float array, not writeable.
    :property viewpoint: the viewpoint ``q``.

    Algorithms read vertices through :ref:`reader`, which counts every
    access; :ref:`points` is the unmetered view used by validation and the
    oracle.
    """
    vertices: np.ndarray = attr.ib(converter=_as_vertex_array)
    viewpoint: Point = attr.ib(validator=attr.validators.instance_of(Point))
    _points: Tuple[Point, ...] = attr.ib(init=False)

    def __attrs_post_init__(self) -> None:
        object.__setattr__(
            self,
            "_points",
            tuple(Point(x, y) for x, y in self.vertices.tolist()),
        )

    def __len__(self) -> int:
        return len(self._points)

    def __repr__(self) -> str:
        return f"PolygonInput(n={len(self)}, viewpoint={self.viewpoint})"

    @property
    def points(self) -> Tuple[Point, ...]:
        return self._points

    def reader(self, meter: Optional[WorkspaceMeter] = None) -> "VertexReader":
        return VertexReader(
            self._points, meter if meter is not None else WorkspaceMeter()
        )

    def edges(self) -> Iterable[Tuple[Point, Point]]:
        n = len(self._points)
        for i in range(n):
            yield self._points[i], self._points[(i + 1) % n]


class VertexReader:
    r"""Cyclic, read-only, metered access to the vertex array."""

    __slots__ = ("_points", "_n", "_meter")

    def __init__(self, points: Tuple[Point, ...], meter: WorkspaceMeter):
        self._points = points
        self._n = len(points)
        self._meter = meter

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, i: int) -> Point:
        self._meter.count_read()
        return self._points[i % self._n]

    @property
    def meter(self) -> WorkspaceMeter:
        return self._meter


def critical_kind(
    q: Point,
    prev: Point,
    cur: Point,
    nxt: Point,
    convention: CriticalConvention = CriticalConvention.REFLEX,
) -> CriticalKind:
    r"""Classify :p:`cur` from its two neighbours.

    ``orientation(q, a, b)`` is counterclockwise exactly when the locally
    unwound angle rises from ``a`` to ``b``, so the local extremum test needs
    no angles at all.

    :raise DegeneratePosition: if a neighbour lies on the ray ``q -> cur``.
    """
    before = orientation(q, prev, cur)
    after = orientation(q, cur, nxt)
    if before is Orientation.COLLINEAR or after is Orientation.COLLINEAR:
        raise DegeneratePosition(
            f"vertex {cur} has a neighbour at the same angle about {q}"
        )
    if before is after:
        return CriticalKind.NOT_CRITICAL
    turn = orientation(prev, cur, nxt)
    if before is Orientation.COUNTERCLOCKWISE_TURN:
        if turn is Orientation.CLOCKWISE_TURN:
            return CriticalKind.CRITICAL_MAX
        return CriticalKind.NOT_CRITICAL
    required = (
        Orientation.CLOCKWISE_TURN
        if convention is CriticalConvention.REFLEX
        else Orientation.COUNTERCLOCKWISE_TURN
    )
    if turn is required:
        return CriticalKind.CRITICAL_MIN
    return CriticalKind.NOT_CRITICAL


def classify_vertex(
    polygon: PolygonInput,
    i: int,
    convention: CriticalConvention = CriticalConvention.REFLEX,
    meter: Optional[WorkspaceMeter] = None,
) -> CriticalKind:
    reader = polygon.reader(meter)
    if not 0 <= i < len(reader):
        raise IndexError(f"vertex index {i} out of range")
    try:
        return critical_kind(
            polygon.viewpoint,
            reader[i - 1],
            reader[i],
            reader[i + 1],
            convention,
        )
    except DegeneratePosition as exc:
        raise DegeneratePosition(str(exc), indices=(i,)) from exc


def critical_count(
    polygon: PolygonInput,
    meter: Optional[WorkspaceMeter] = None,
    convention: CriticalConvention = CriticalConvention.REFLEX,
) -> int:
    r"""Number of critical vertices, in one pass with a sliding window of
    three vertices."""
    reader = polygon.reader(meter)
    q = polygon.viewpoint
    n = len(reader)
    count = 0
    with reader.meter.scalars(10):
        prev = reader[n - 1]
        cur = reader[0]
        for i in range(n):
            nxt = reader[i + 1]
            try:
                kind = critical_kind(q, prev, cur, nxt, convention)
            except DegeneratePosition as exc:
                raise DegeneratePosition(str(exc), indices=(i,)) from exc
            if kind is not CriticalKind.NOT_CRITICAL:
                count += 1
            prev, cur = cur, nxt
    return count


def signed_area(vertices: np.ndarray) -> float:
    x = vertices[:, 0]
    y = vertices[:, 1]
    return float(
        0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    )


def point_in_polygon(polygon: PolygonInput, p: Point) -> bool:
    r"""Crossing-number test against a horizontal ray to the right of
    :p:`p`, with exact orientation signs.

    :raise DegeneratePosition: if :p:`p` lies on the boundary.
    """
    inside = False
    points = polygon.points
    n = len(points)
    for i in range(n):
        a = points[i]
        b = points[(i + 1) % n]
        side = orientation(a, b, p)
        if side is Orientation.COLLINEAR and _on_segment(a, b, p):
            raise DegeneratePosition(
                f"point {p} lies on edge {i}", indices=(i, (i + 1) % n)
            )
        if (a.y > p.y) != (b.y > p.y):
            upward = b.y > a.y
            if (upward and side is Orientation.COUNTERCLOCKWISE_TURN) or (
                not upward and side is Orientation.CLOCKWISE_TURN
            ):
                inside = not inside
    return inside


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(
        a.y, b.y
    ) <= p.y <= max(a.y, b.y)


def validate(polygon: PolygonInput, strict: bool = True) -> None:
    r"""Check the input invariants.

    :param strict: also check simplicity (quadratic) and general position
        about the viewpoint; otherwise only orientation and the viewpoint are
        checked, in linear time.
    :raise NotSimple: two edges intersect; names the edge pair.
    :raise NotCcw: the signed area is not positive; names the two edges at
        the lowest-leftmost vertex.
    :raise ViewpointOutside: the viewpoint is outside or on the boundary;
        names the nearest edge.
    :raise DegeneratePosition: a vertex equals the viewpoint, or two vertices
        lie in the same direction from it.
    """
    if strict:
        _check_simple(polygon)
    if not signed_area(polygon.vertices) > 0.0:
        raise NotCcw(
            "vertices are not in counterclockwise order",
            indices=_lowest_corner_edges(polygon.vertices),
        )
    _check_viewpoint(polygon)
    if strict:
        _check_general_position(polygon)


def _lowest_corner_edges(vertices: np.ndarray) -> Tuple[int, int]:
    # the lowest-leftmost vertex is a hull corner; its two edges show the
    # traversal direction
    n = len(vertices)
    i = int(np.lexsort((vertices[:, 0], vertices[:, 1]))[0])
    return (i - 1) % n, i


def _nearest_edge(vertices: np.ndarray, p: Point) -> Tuple[int, int]:
    a = vertices
    d = np.roll(vertices, -1, axis=0) - a
    length2 = np.einsum("ij,ij->i", d, d)
    rel = np.array([p.x, p.y]) - a
    t = np.clip(
        np.einsum("ij,ij->i", rel, d) / np.where(length2 > 0, length2, 1.0),
        0.0,
        1.0,
    )
    gap = rel - t[:, None] * d
    i = int(np.argmin(np.einsum("ij,ij->i", gap, gap)))
    return i, (i + 1) % len(vertices)


def _check_viewpoint(polygon: PolygonInput) -> None:
    q = polygon.viewpoint
    same = np.nonzero(
        (polygon.vertices[:, 0] == q.x) & (polygon.vertices[:, 1] == q.y)
    )[0]
    if len(same):
        raise DegeneratePosition(
            f"viewpoint {q} coincides with a vertex", indices=same
        )
    try:
        inside = point_in_polygon(polygon, q)
    except DegeneratePosition as exc:
        raise ViewpointOutside(
            f"viewpoint {q} lies on the boundary", indices=exc.indices
        ) from exc
    if not inside:
        raise ViewpointOutside(
            f"viewpoint {q} is outside the polygon",
            indices=_nearest_edge(polygon.vertices, q),
        )


def _check_simple(polygon: PolygonInput) -> None:
    points = polygon.points
    n = len(points)
    # adjacent edges: zero length or folding back onto each other
    for i in range(n):
        a, b, c = points[i - 1], points[i], points[(i + 1) % n]
        if a == b:
            raise NotSimple(
                "repeated vertex", indices=((i - 1) % n, i)
            )
        if orientation(a, b, c) is Orientation.COLLINEAR and (
            (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) < 0.0
        ):
            raise NotSimple(
                "adjacent edges overlap", indices=((i - 1) % n, i)
            )
    for i, j in _candidate_crossings(polygon.vertices):
        if segments_intersect(
            points[i], points[(i + 1) % n], points[j], points[(j + 1) % n]
        ):
            raise NotSimple(f"edges {i} and {j} intersect", indices=(i, j))


def _candidate_crossings(vertices: np.ndarray) -> Iterable[Tuple[int, int]]:
    r"""Non-adjacent edge pairs that float arithmetic cannot prove disjoint;
    callers confirm each candidate exactly."""
    n = len(vertices)
    a = vertices
    b = np.roll(vertices, -1, axis=0)
    scale = float(np.max(np.abs(vertices))) or 1.0
    tol = 64.0 * np.finfo(np.float64).eps * scale * scale
    index = np.arange(n)
    for start in range(0, n, _SIMPLICITY_BLOCK):
        rows = slice(start, min(n, start + _SIMPLICITY_BLOCK))
        ai = a[rows, None, :]
        bi = b[rows, None, :]
        aj = a[None, :, :]
        bj = b[None, :, :]
        o1 = _cross(ai, bi, aj)
        o2 = _cross(ai, bi, bj)
        o3 = _cross(aj, bj, ai)
        o4 = _cross(aj, bj, bi)
        apart = ((o1 * o2 > 0) & (np.minimum(abs(o1), abs(o2)) > tol)) | (
            (o3 * o4 > 0) & (np.minimum(abs(o3), abs(o4)) > tol)
        )
        i_idx = index[rows, None]
        j_idx = index[None, :]
        adjacent = (j_idx <= i_idx + 1) | ((i_idx == 0) & (j_idx == n - 1))
        for i, j in zip(*np.nonzero(~apart & ~adjacent)):
            yield int(i) + start, int(j)


def _cross(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> np.ndarray:
    return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (
        q[..., 1] - p[..., 1]
    ) * (r[..., 0] - p[..., 0])


def _check_general_position(polygon: PolygonInput) -> None:
    q = polygon.viewpoint
    points = polygon.points
    n = len(points)
    # an edge on a line through q overlaps the rays cast along it
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        if orientation(a, b, q) is Orientation.COLLINEAR:
            raise DegeneratePosition(
                f"edge {a} {b} lies on a line through {q}",
                indices=(i, (i + 1) % n),
            )
    theta = np.mod(
        np.arctan2(
            polygon.vertices[:, 1] - q.y, polygon.vertices[:, 0] - q.x
        ),
        2.0 * math.pi,
    )
    order = np.argsort(theta, kind="stable")
    for k in range(n):
        i = int(order[k])
        j = int(order[(k + 1) % n])
        a, b = points[i], points[j]
        if orientation(q, a, b) is Orientation.COLLINEAR and (
            (a.x - q.x) * (b.x - q.x) + (a.y - q.y) * (b.y - q.y) > 0.0
        ):
            raise DegeneratePosition(
                f"vertices {a} and {b} lie in the same direction from {q}",
                indices=tuple(sorted((i, j))),
            )


def parse_polygon(
    text: str,
) -> Tuple[List[Tuple[float, float]], Optional[Point]]:
    r"""Parse polygon file text into vertex pairs and an optional viewpoint.

    :raise PolygonFormatError: naming the offending 1-based line.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise PolygonFormatError("empty polygon file", line=1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise PolygonFormatError(
            f"expected a vertex count, got {lines[0]!r}", line=1
        )
    if n < 3:
        raise PolygonFormatError(
            f"a polygon needs at least 3 vertices, got {n}", line=1
        )
    if len(lines) < n + 1:
        raise PolygonFormatError(
            f"expected {n} vertex lines, file ends early", line=len(lines) + 1
        )
    if len(lines) > n + 2:
        raise PolygonFormatError("unexpected trailing content", line=n + 3)
    vertices = [_parse_pair(lines[k], k + 1) for k in range(1, n + 1)]
    viewpoint = None
    if len(lines) == n + 2:
        viewpoint = Point(*_parse_pair(lines[n + 1], n + 2))
    return vertices, viewpoint


def _parse_pair(line: str, lineno: int) -> Tuple[float, float]:
    fields = line.split()
    if len(fields) != 2:
        raise PolygonFormatError(
            f"expected 'x y', got {line!r}", line=lineno
        )
    try:
        x, y = float(fields[0]), float(fields[1])
    except ValueError:
        raise PolygonFormatError(f"not a number in {line!r}", line=lineno)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise PolygonFormatError(
            f"non-finite coordinate in {line!r}", line=lineno
        )
    return x, y


def read_polygon(
    path: PathLike, viewpoint: Optional[Point] = None
) -> PolygonInput:
    r"""Load a polygon file. :p:`viewpoint`, when given, overrides the one
    stored in the file."""
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("utf8")
    except UnicodeDecodeError as exc:
        raise PolygonFormatError(
            f"not UTF-8 text (byte {raw[exc.start]:#04x})",
            line=raw.count(b"\n", 0, exc.start) + 1,
        )
    vertices, stored = parse_polygon(text)
    if viewpoint is None:
        viewpoint = stored
    if viewpoint is None:
        raise InvalidPolygon(f"no viewpoint given for {path}")
    return PolygonInput(vertices=vertices, viewpoint=viewpoint)


def format_polygon(
    points: Sequence[Point], viewpoint: Optional[Point] = None
) -> str:
    lines = [str(len(points))]
    lines.extend(f"{p.x!r} {p.y!r}" for p in points)
    if viewpoint is not None:
        lines.append(f"{viewpoint.x!r} {viewpoint.y!r}")
    return "\n".join(lines) + "\n"


def write_polygon(
    path: PathLike,
    points: Sequence[Point],
    viewpoint: Optional[Point] = None,
) -> None:
    with open(path, "w", encoding="utf8") as f:
        f.write(format_polygon(points, viewpoint))
