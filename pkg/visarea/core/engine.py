#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Engines compute a visibility polygon into an :ref:`OutputSink` and
report :ref:`RunStats`. Implementations register themselves with
:py:`registry.register_engine` and are built from a run config.
"""

import abc
from typing import Any, Dict, List, Optional

import attr

from visarea.config import Config, get_config
from visarea.core.polygon import PolygonInput
from visarea.core.workspace import OutputSink, WorkspaceMeter

STATS_KEYS = (
    "n",
    "c",
    "c_effective",
    "vertex_reads",
    "flag_bits",
    "scalar_slots_peak",
    "wall_ms",
    "engine",
    "mode",
)


@attr.s(auto_attribs=True, slots=True)
class RunStats:
    n: int
    engine: str
    mode: str
    c: int = 0
    c_effective: int = 0
    meter: Dict[str, int] = attr.Factory(dict)
    discrepancies: List[int] = attr.Factory(list)
    partial_output: bool = False
    wall_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        r"""The stats file record, keyed by :py:`STATS_KEYS`."""
        record = {
            "n": self.n,
            "c": self.c,
            "c_effective": self.c_effective,
            "vertex_reads": self.meter.get("vertex_reads", 0),
            "flag_bits": self.meter.get("flag_bits", 0),
            "scalar_slots_peak": self.meter.get("scalar_slots_peak", 0),
            "wall_ms": round(self.wall_ms, 3),
            "engine": self.engine,
            "mode": self.mode,
        }
        assert tuple(record) == STATS_KEYS
        return record


class Engine(abc.ABC):
    r"""Abstract visibility engine.

    :param config: run config (see :ref:`visarea.config.default`); the
        defaults are used when omitted.
    """

    name: str = ""

    def __init__(self, config: Optional[Config] = None) -> None:
        if config is None:
            config = get_config()
        self.config = config

    @abc.abstractmethod
    def run(
        self,
        polygon: PolygonInput,
        sink: OutputSink,
        meter: Optional[WorkspaceMeter] = None,
    ) -> RunStats:
        r"""Write the visibility polygon of :p:`polygon` to :p:`sink`."""
