#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import pytest

from visarea.core.geometry import Point
from visarea.core.workspace import OutputSink, WorkspaceMeter


def test_meter_counts():
    meter = WorkspaceMeter()
    meter.count_read()
    meter.count_read(3)
    meter.count_write()
    meter.allocate_flags(16)
    assert meter.snapshot() == {
        "flag_bits": 16,
        "scalar_slots_peak": 0,
        "vertex_reads": 4,
        "output_writes": 1,
    }


def test_nested_scalar_scopes():
    meter = WorkspaceMeter()
    with meter.scalars(4):
        with meter.scalars(6):
            assert meter.live_scalars == 10
        with meter.scalars(2):
            assert meter.live_scalars == 6
    assert meter.live_scalars == 0
    assert meter.scalar_slots_peak == 10
    with meter.scalars(3):
        pass
    assert meter.scalar_slots_peak == 10


def test_scalar_scope_as_decorator():
    meter = WorkspaceMeter()

    @meter.scalars(5)
    def work(depth):
        if depth:
            work(depth - 1)

    work(2)
    assert meter.scalar_slots_peak == 15
    assert meter.live_scalars == 0


def test_scalar_scope_released_on_error():
    meter = WorkspaceMeter()
    with pytest.raises(KeyError):
        with meter.scalars(7):
            raise KeyError("boom")
    assert meter.live_scalars == 0
    assert meter.scalar_slots_peak == 7


def test_output_sink():
    meter = WorkspaceMeter()
    sink = OutputSink()
    writer = sink.writer(meter)
    writer.write(Point(0, 0))
    writer.write(Point(1, 0))
    assert meter.output_writes == 2
    assert not sink.sealed
    assert sink.seal() == (Point(0, 0), Point(1, 0))
    assert sink.sealed
    with pytest.raises(RuntimeError):
        writer.write(Point(2, 0))


def test_sink_writer_is_write_only():
    writer = OutputSink().writer()
    assert not hasattr(writer, "__getitem__")
    assert not hasattr(writer, "__iter__")
    with pytest.raises(AttributeError):
        writer.points = []
