#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Geometry kernel: points, polar coordinates about the viewpoint, exact
orientation, ray/segment hits and shadow points.

Everything downstream is driven by orientation signs, so
:ref:`orientation` never rounds a sign wrong: a float evaluation is accepted
only when it clears the forward error bound of the determinant, otherwise the
determinant is re-evaluated exactly with :py:`fractions.Fraction` (every
finite double is a dyadic rational, so the fallback is exact).
"""

import math
import sys
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Tuple

import attr

from visarea.core.errors import DegenerateInput
from visarea.core.utils import finite_validator

TWO_PI = 2.0 * math.pi

# half ulp of 1.0
_EPSILON = sys.float_info.epsilon / 2.0
_CCW_ERRBOUND_A = (3.0 + 16.0 * _EPSILON) * _EPSILON


@attr.s(auto_attribs=True, frozen=True, slots=True, repr=False)
class Point:
    x: float = attr.ib(converter=float, validator=finite_validator)
    y: float = attr.ib(converter=float, validator=finite_validator)

    def __repr__(self) -> str:
        return f"Point({self.x!r}, {self.y!r})"

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def distance_to(self, other: "Point") -> float:
        return math.hypot(other.x - self.x, other.y - self.y)


Segment = Tuple[Point, Point]


@attr.s(auto_attribs=True, frozen=True, slots=True)
class PolarCoord:
    theta: float
    rho: float


@attr.s(auto_attribs=True, frozen=True, slots=True)
class RayHit:
    r"""A boundary point struck by a ray from the viewpoint, with its
    distance from the viewpoint."""
    point: Point
    rho: float


class Orientation(Enum):
    CLOCKWISE_TURN = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE_TURN = 1

    @property
    def flipped(self) -> "Orientation":
        return Orientation(-self.value)


def polar_of(q: Point, p: Point) -> PolarCoord:
    r"""Angle of the ray :p:`q` -> :p:`p` against the positive X-axis,
    normalized to :math:`[0, 2\pi)`, and the distance :math:`|qp|`.
    """
    dx = p.x - q.x
    dy = p.y - q.y
    if dx == 0.0 and dy == 0.0:
        raise DegenerateInput(f"point {p} coincides with the viewpoint")
    return PolarCoord(
        theta=_normalize(math.atan2(dy, dx)), rho=math.hypot(dx, dy)
    )


def polar_angle(q: Point, p: Point) -> float:
    dx = p.x - q.x
    dy = p.y - q.y
    if dx == 0.0 and dy == 0.0:
        raise DegenerateInput(f"point {p} coincides with the viewpoint")
    return _normalize(math.atan2(dy, dx))


def from_polar(q: Point, polar: PolarCoord) -> Point:
    return Point(
        q.x + polar.rho * math.cos(polar.theta),
        q.y + polar.rho * math.sin(polar.theta),
    )


def _normalize(theta: float) -> float:
    if theta < 0.0:
        theta += TWO_PI
    # -tiny + 2pi rounds up to 2pi
    if theta >= TWO_PI:
        theta = 0.0
    return theta


def unwind(theta: float, reference: float) -> float:
    r"""Shift :p:`theta` by a multiple of :math:`2\pi` to the representative
    nearest :p:`reference`.
    """
    return theta + TWO_PI * round((reference - theta) / TWO_PI)


def orientation(v1: Point, v2: Point, v3: Point) -> Orientation:
    r"""Turn direction of :p:`v1` -> :p:`v2` -> :p:`v3`.

    :return: :py:`Orientation.COUNTERCLOCKWISE_TURN` if :p:`v3` lies strictly
        left of the directed line :p:`v1` -> :p:`v2`,
        :py:`Orientation.CLOCKWISE_TURN` if strictly right, else
        :py:`Orientation.COLLINEAR`.
    """
    detleft = (v2.x - v1.x) * (v3.y - v1.y)
    detright = (v2.y - v1.y) * (v3.x - v1.x)
    det = detleft - detright
    errbound = _CCW_ERRBOUND_A * (abs(detleft) + abs(detright))
    if det > errbound:
        return Orientation.COUNTERCLOCKWISE_TURN
    if -det > errbound:
        return Orientation.CLOCKWISE_TURN
    return _orientation_exact(v1, v2, v3)


def _orientation_exact(v1: Point, v2: Point, v3: Point) -> Orientation:
    x1, y1 = Fraction(v1.x), Fraction(v1.y)
    det = (Fraction(v2.x) - x1) * (Fraction(v3.y) - y1) - (
        Fraction(v2.y) - y1
    ) * (Fraction(v3.x) - x1)
    if det > 0:
        return Orientation.COUNTERCLOCKWISE_TURN
    if det < 0:
        return Orientation.CLOCKWISE_TURN
    return Orientation.COLLINEAR


def _ahead(q: Point, through: Point, p: Point) -> bool:
    # only meaningful for p on the line through q and through
    return (p.x - q.x) * (through.x - q.x) + (p.y - q.y) * (
        through.y - q.y
    ) > 0.0


def _hit_at(q: Point, p: Point) -> RayHit:
    return RayHit(point=p, rho=math.hypot(p.x - q.x, p.y - q.y))


def ray_hit(q: Point, through: Point, seg: Segment) -> Optional[RayHit]:
    r"""Intersection of the open ray :math:`\{q + t (through - q), t > 0\}`
    with the closed segment :p:`seg`.

    Whether the ray meets the segment is decided with exact orientations;
    only the position of a proper crossing is computed in floating point.

    :raise DegenerateInput: if the segment lies on the ray's supporting line
        and overlaps the ray.
    """
    if through == q:
        raise DegenerateInput("ray direction is undefined (through == q)")
    a, b = seg
    side_a = orientation(q, through, a)
    side_b = orientation(q, through, b)
    collinear = Orientation.COLLINEAR

    if side_a is collinear and side_b is collinear:
        if _ahead(q, through, a) or _ahead(q, through, b):
            raise DegenerateInput(
                f"segment {a}-{b} is collinear with the ray from {q}"
            )
        return None
    if side_a is side_b:
        return None
    if side_a is collinear:
        return _hit_at(q, a) if _ahead(q, through, a) else None
    if side_b is collinear:
        return _hit_at(q, b) if _ahead(q, through, b) else None

    # a and b lie strictly on opposite sides of the supporting line; the
    # crossing is ahead of q iff q -> a -> b turns the way b lies
    if orientation(q, a, b) is not side_b:
        return None

    dx = through.x - q.x
    dy = through.y - q.y
    ex = b.x - a.x
    ey = b.y - a.y
    u = ((q.x - a.x) * dy - (q.y - a.y) * dx) / (ex * dy - ey * dx)
    u = min(1.0, max(0.0, u))
    point = Point(a.x + u * ex, a.y + u * ey)
    return RayHit(point=point, rho=math.hypot(point.x - q.x, point.y - q.y))


def shadow_point(
    q: Point, v: Point, edges: Iterable[Segment]
) -> Optional[RayHit]:
    r"""First boundary point struck by the ray :p:`q` -> :p:`v` strictly
    beyond :p:`v`.

    :raise DegenerateInput: if two edges are struck at the same minimal
        distance (the ray grazes a vertex) or an edge overlaps the ray.
    """
    rho_v = math.hypot(v.x - q.x, v.y - q.y)
    best: Optional[RayHit] = None
    tied = False
    for seg in edges:
        hit = ray_hit(q, v, seg)
        if hit is None or hit.rho <= rho_v:
            continue
        if best is None or hit.rho < best.rho:
            best = hit
            tied = False
        elif hit.rho == best.rho:
            tied = True
    if tied:
        raise DegenerateInput(
            f"shadow of {v} is struck by two edges at distance {best.rho}"
        )
    return best


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    r"""True iff the closed segments :p:`a` :p:`b` and :p:`c` :p:`d` share a
    point."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 is not o2 and o3 is not o4 and (
        Orientation.COLLINEAR not in (o1, o2, o3, o4)
    ):
        return True
    collinear = Orientation.COLLINEAR
    return (
        (o1 is collinear and _within_box(a, b, c))
        or (o2 is collinear and _within_box(a, b, d))
        or (o3 is collinear and _within_box(c, d, a))
        or (o4 is collinear and _within_box(c, d, b))
    )


def _within_box(a: Point, b: Point, p: Point) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(
        a.y, b.y
    ) <= p.y <= max(a.y, b.y)
