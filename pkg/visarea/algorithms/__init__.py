#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from visarea.algorithms.chain import Chain, emit_chain_visibility
from visarea.algorithms.driver import ConstrainedEngine, visibility_polygon
from visarea.algorithms.effective import (
    EffectiveFlags,
    PipelineMode,
    compute_effective,
)

__all__ = [
    "Chain",
    "ConstrainedEngine",
    "EffectiveFlags",
    "PipelineMode",
    "compute_effective",
    "emit_chain_visibility",
    "visibility_polygon",
]
