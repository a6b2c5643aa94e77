#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from visarea.algorithms import (
    ConstrainedEngine,
    PipelineMode,
    compute_effective,
    visibility_polygon,
)
from visarea.config import Config, get_config
from visarea.core.benchmark import Benchmark
from visarea.core.engine import Engine, RunStats
from visarea.core.errors import VisibilityError
from visarea.core.geometry import Point
from visarea.core.logging import logger
from visarea.core.polygon import PolygonInput, read_polygon, validate
from visarea.core.registry import registry  # noqa: F401
from visarea.core.workspace import OutputSink, WorkspaceMeter
from visarea.oracle import (
    Corpus,
    OracleEngine,
    brute_force_visibility,
    compare_cyclic,
)
from visarea.version import VERSION as __version__  # noqa: F401

__all__ = [
    "Benchmark",
    "Config",
    "ConstrainedEngine",
    "Corpus",
    "Engine",
    "OracleEngine",
    "OutputSink",
    "PipelineMode",
    "Point",
    "PolygonInput",
    "RunStats",
    "VisibilityError",
    "WorkspaceMeter",
    "brute_force_visibility",
    "compare_cyclic",
    "compute_effective",
    "get_config",
    "logger",
    "read_polygon",
    "validate",
    "visibility_polygon",
]
