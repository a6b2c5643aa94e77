#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Error hierarchy shared by the kernel, the pipeline, the oracle and the
command line. Every error can carry the vertex indices it is about, so a
failing instance can be reported without re-running the computation.

The CLI maps the families to exit codes: :ref:`InvalidPolygon` and
:ref:`GenerationTimeout` exit with 1, :ref:`DegenerateInput` (and its
subclass :ref:`DegeneratePosition`) with 2, :ref:`PipelineError` with 3.
"""

from typing import Iterable, Optional, Tuple


class VisibilityError(Exception):
    exit_code = 1

    def __init__(self, message: str, indices: Iterable[int] = ()) -> None:
        self.indices: Tuple[int, ...] = tuple(int(i) for i in indices)
        if self.indices:
            message = "{} (indices {})".format(
                message, ", ".join(str(i) for i in self.indices)
            )
        super().__init__(message)
        # filled in by the driver when a run aborts
        self.stats: Optional[object] = None


class DegenerateInput(VisibilityError):
    exit_code = 2


class DegeneratePosition(DegenerateInput):
    pass


class InvalidPolygon(VisibilityError):
    pass


class NotSimple(InvalidPolygon):
    pass


class NotCcw(InvalidPolygon):
    pass


class ViewpointOutside(InvalidPolygon):
    pass


class PolygonFormatError(InvalidPolygon):
    def __init__(self, message: str, line: int) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class PipelineError(VisibilityError):
    exit_code = 3


class PipelineDiscrepancy(PipelineError):
    # the strict flag array the check rejected
    flags: Optional[object] = None


class WindowNotFound(PipelineError):
    pass


class GenerationTimeout(VisibilityError):
    pass
