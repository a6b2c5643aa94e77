#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from visarea.oracle.corpus import Corpus, CorpusInstance
from visarea.oracle.reference import (
    OracleEngine,
    brute_force_visibility,
    compare_cyclic,
    visible_from,
)

__all__ = [
    "Corpus",
    "CorpusInstance",
    "OracleEngine",
    "brute_force_visibility",
    "compare_cyclic",
    "visible_from",
]
