#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import numpy as np
import pytest

from visarea.core.errors import DegeneratePosition
from visarea.core.geometry import Point
from visarea.core.polygon import CriticalConvention, PolygonInput, read_polygon
from visarea.core.registry import registry
from visarea.core.workspace import OutputSink
from visarea.oracle.corpus import notched_square, two_notch, unit_square
from visarea.oracle.reference import (
    OracleEngine,
    brute_force_visibility,
    compare_cyclic,
    visibility_mask,
    visible_critical_indices,
    visible_from,
)

NOTCHED_ORACLE = "test/data/notched_square_oracle.poly"


def _points(*coords):
    return [Point(x, y) for x, y in coords]


def _square():
    return _points((0, 0), (4, 0), (4, 4), (0, 4))


def test_visible_from():
    polygon = notched_square().polygon
    assert visible_from(polygon, Point(0, 0))
    assert visible_from(polygon, Point(2.5, 3))
    assert not visible_from(polygon, Point(1.5, 4))
    assert not visible_from(polygon, Point(2.5, 4))


def test_visible_from_collinear_edge():
    polygon = PolygonInput(
        vertices=[(0, 0), (6, 0), (5, 5), (3, 3), (0, 6)],
        viewpoint=Point(1, 1),
    )
    with pytest.raises(DegeneratePosition):
        visible_from(polygon, Point(5, 5))


def test_visibility_mask():
    polygon = notched_square().polygon
    mask = visibility_mask(polygon)
    assert mask.dtype == bool
    assert mask.tolist() == [True, True, True, False, True, True, False, True]
    assert visibility_mask(unit_square().polygon).all()


def test_visible_critical_indices():
    assert visible_critical_indices(notched_square().polygon) == [4, 5]
    assert visible_critical_indices(two_notch().polygon) == [2]
    assert visible_critical_indices(unit_square().polygon) == []
    paper = visible_critical_indices(
        notched_square().polygon, CriticalConvention.PAPER
    )
    assert 4 not in paper


def test_brute_force_notched_square():
    points = brute_force_visibility(notched_square().polygon)
    assert len(points) == 8
    assert points[0] == Point(4, 4)
    assert compare_cyclic(points, read_polygon(NOTCHED_ORACLE).points)


def test_brute_force_two_notch():
    points = brute_force_visibility(two_notch().polygon)
    assert compare_cyclic(
        points, _points((4, 3), (5.5, 4), (0, 4), (0, 0), (4, 0))
    )


def test_brute_force_convex():
    polygon = unit_square().polygon
    assert compare_cyclic(brute_force_visibility(polygon), polygon.points)


def test_compare_cyclic_rotation():
    square = _square()
    assert compare_cyclic(square, square[2:] + square[:2])
    assert not compare_cyclic(square, square[::-1])
    assert not compare_cyclic(square, square[:3])


def test_compare_cyclic_drops_collinear():
    square = _square()
    with_midpoint = square[:1] + [Point(2, 0)] + square[1:]
    assert compare_cyclic(square, with_midpoint)
    assert compare_cyclic(with_midpoint, square)


def test_compare_cyclic_tolerance():
    square = _square()
    close = [Point(p.x + 1e-12, p.y) for p in square]
    far = [Point(p.x + 1e-3, p.y) for p in square]
    assert compare_cyclic(square, close)
    assert not compare_cyclic(square, far)
    assert compare_cyclic(square, far, tol=1e-3)


def test_compare_cyclic_empty():
    assert compare_cyclic([], [])
    assert not compare_cyclic([], _square())


def test_oracle_engine():
    engine_cls = registry.get_engine("oracle")
    assert engine_cls is OracleEngine
    sink = OutputSink()
    stats = engine_cls().run(notched_square().polygon, sink)
    points = sink.seal()
    assert compare_cyclic(points, read_polygon(NOTCHED_ORACLE).points)
    record = stats.to_dict()
    assert record["engine"] == "oracle"
    assert record["mode"] == "n/a"
    assert record["c"] == 2
    assert record["c_effective"] == 2
    assert record["flag_bits"] == 0
    assert stats.meter["output_writes"] == 8


def test_oracle_mask_agrees_with_visible_from():
    polygon = two_notch().polygon
    mask = visibility_mask(polygon)
    expected = np.array([visible_from(polygon, p) for p in polygon.points])
    assert (mask == expected).all()
