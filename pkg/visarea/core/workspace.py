#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Resource accounting for the constrained-workspace model.

The input is read through a metered accessor, the output goes to an
append-only sink, and every routine declares the word-sized scalars it keeps
alive through :ref:`WorkspaceMeter.scalars`. Flag bits are counted apart from
scalars so the bit bound can be checked directly.
"""

from contextlib import ContextDecorator
from typing import Dict, List, Optional, Tuple

import attr

from visarea.core.geometry import Point


@attr.s(auto_attribs=True, slots=True)
class WorkspaceMeter:
    flag_bits: int = 0
    scalar_slots_peak: int = 0
    vertex_reads: int = 0
    output_writes: int = 0
    live_scalars: int = attr.ib(default=0, init=False, repr=False)

    def count_read(self, k: int = 1) -> None:
        self.vertex_reads += k

    def count_write(self) -> None:
        self.output_writes += 1

    def allocate_flags(self, bits: int) -> None:
        self.flag_bits += bits

    def scalars(self, count: int) -> "ScalarScope":
        return ScalarScope(self, count)

    def snapshot(self) -> Dict[str, int]:
        return attr.asdict(
            self, filter=lambda a, _: a.name != "live_scalars"
        )


class ScalarScope(ContextDecorator):
    r"""Declare :p:`count` live word-sized scalars for the duration of a
    block. Use as a function decorator or in a with statement; nested scopes
    add up and the meter keeps the peak.
    """

    def __init__(self, meter: WorkspaceMeter, count: int):
        self._meter = meter
        self._count = count

    def __enter__(self):
        self._meter.live_scalars += self._count
        if self._meter.live_scalars > self._meter.scalar_slots_peak:
            self._meter.scalar_slots_peak = self._meter.live_scalars
        return self

    def __exit__(self, *exc):
        self._meter.live_scalars -= self._count
        return False


class SinkWriter:
    r"""The only handle on the output the algorithm receives: it can append,
    it cannot look back."""

    __slots__ = ("_append", "_meter")

    def __init__(self, append, meter: WorkspaceMeter):
        self._append = append
        self._meter = meter

    def write(self, point: Point) -> None:
        self._append(point)
        self._meter.count_write()


class OutputSink:
    r"""Append-only result sequence.

    Writers obtained from :ref:`writer` append; :ref:`seal` ends the
    computation and returns the points. A sealed sink rejects writes.
    """

    def __init__(self) -> None:
        self._points: List[Point] = []
        self._sealed = False

    def _append(self, point: Point) -> None:
        if self._sealed:
            raise RuntimeError("write to a sealed OutputSink")
        self._points.append(point)

    def writer(self, meter: Optional[WorkspaceMeter] = None) -> SinkWriter:
        return SinkWriter(
            self._append, meter if meter is not None else WorkspaceMeter()
        )

    @property
    def sealed(self) -> bool:
        return self._sealed

    def seal(self) -> Tuple[Point, ...]:
        self._sealed = True
        return tuple(self._points)
