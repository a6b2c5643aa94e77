#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

from typing import List, Optional, Union

import yacs.config


# Default visarea config node
class Config(yacs.config.CfgNode):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs, new_allowed=True)


CN = Config

DEFAULT_CONFIG_DIR = "configs/"
CONFIG_FILE_SEPARATOR = ","

# -----------------------------------------------------------------------------
# Config definition
# -----------------------------------------------------------------------------
_C = CN()
_C.SEED = 100
# "constrained" or "oracle"
_C.ENGINE = "constrained"
# "strict-paper" or "validated"; ignored by the oracle engine
_C.MODE = "strict-paper"
# empty: log to stderr only
_C.LOG_FILE = ""
_C.VERBOSE = False
# -----------------------------------------------------------------------------
# GEOMETRY
# -----------------------------------------------------------------------------
_C.GEOMETRY = CN()
# relative to max(1, |x|, |y|)
_C.GEOMETRY.DEDUP_TOLERANCE = 1e-12
# relative to the window distance
_C.GEOMETRY.WINDOW_MATCH_TOLERANCE = 1e-9
# -----------------------------------------------------------------------------
# POLYGON
# -----------------------------------------------------------------------------
_C.POLYGON = CN()
_C.POLYGON.STRICT_VALIDATION = True
# "reflex" or "paper"
_C.POLYGON.CRITICAL_CONVENTION = "reflex"
# -----------------------------------------------------------------------------
# ORACLE
# -----------------------------------------------------------------------------
_C.ORACLE = CN()
_C.ORACLE.COMPARE_TOLERANCE = 1e-9
_C.ORACLE.COLLINEAR_TOLERANCE = 1e-12
# -----------------------------------------------------------------------------
# GENERATOR
# -----------------------------------------------------------------------------
_C.GENERATOR = CN()
_C.GENERATOR.FAMILY = "random"
_C.GENERATOR.NUM_VERTICES = 50
_C.GENERATOR.MAX_SWAPS = 100000
_C.GENERATOR.MAX_RESAMPLES = 1000
_C.GENERATOR.MIN_ANGULAR_SEPARATION = 1e-6
_C.GENERATOR.COMB_TEETH = 4
_C.GENERATOR.COMB_DEPTH = 3.0
_C.GENERATOR.SPIRAL_TURNS = 1.5
# -----------------------------------------------------------------------------
# BENCH
# -----------------------------------------------------------------------------
_C.BENCH = CN()
_C.BENCH.SIZES = [1000, 10000, 100000]
_C.BENCH.FAMILIES = ["comb", "convex"]
_C.BENCH.COMB_TEETH = 8
# quadratic baseline timings; empty to skip
_C.BENCH.ORACLE_SIZES = []
# -----------------------------------------------------------------------------
# CHECK
# -----------------------------------------------------------------------------
_C.CHECK = CN()
_C.CHECK.NUM_RANDOM = 500
_C.CHECK.MIN_VERTICES = 4
_C.CHECK.MAX_VERTICES = 200
_C.CHECK.ARCHIVE_DIR = "data/failures"
# -----------------------------------------------------------------------------
# SVG
# -----------------------------------------------------------------------------
_C.SVG = CN()
_C.SVG.MARGIN = 0.05
_C.SVG.BOUNDARY_COLOR = "#333333"
_C.SVG.VISIBILITY_COLOR = "#f2c14e"
_C.SVG.VIEWPOINT_COLOR = "#d1495b"
_C.SVG.CRITICAL_COLOR = "#00798c"
_C.SVG.WINDOW_COLOR = "#30638e"


def get_config(
    config_paths: Optional[Union[List[str], str]] = None,
    opts: Optional[list] = None,
) -> CN:
    r"""Create a unified config with default values overwritten by values from
    :p:`config_paths` and overwritten by options from :p:`opts`.

    :param config_paths: List of config paths or string that contains comma
        separated list of config paths.
    :param opts: Config options (keys, values) in a list (e.g., passed from
        command line into the config. For example,
        :py:`opts = ['GENERATOR.NUM_VERTICES', 200]`.
    """
    config = _C.clone()
    if config_paths:
        if isinstance(config_paths, str):
            if CONFIG_FILE_SEPARATOR in config_paths:
                config_paths = config_paths.split(CONFIG_FILE_SEPARATOR)
            else:
                config_paths = [config_paths]

        for config_path in config_paths:
            config.merge_from_file(config_path)

    if opts:
        config.merge_from_list(opts)

    config.freeze()
    return config
