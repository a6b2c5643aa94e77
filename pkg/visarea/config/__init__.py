#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""visarea configuration
=========================

visarea uses the `Yacs configuration system
<https://github.com/rbgirshick/yacs>`_: defaults live in
:py:`visarea.config.default`, experiment files under ``configs/`` are merged
over them in order, and command line ``KEY VALUE`` pairs are merged last.

```
    config = get_config(
        config_paths="configs/bench/comb.yaml",
        opts=["BENCH.SIZES", "[1000, 2000]"],
    )
```

## Config structure
- top level: SEED, ENGINE, MODE, LOG_FILE, VERBOSE
- GEOMETRY: output tolerances
- POLYGON: validation and critical-vertex convention
- ORACLE: comparison tolerances
- GENERATOR: corpus family parameters
- BENCH / CHECK: size sweeps and corpus checks
- SVG: plot margin and colours
"""

from visarea.config.default import Config, get_config

__all__ = ["Config", "get_config"]
