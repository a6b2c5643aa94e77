#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import logging
from typing import Optional


class VisareaLogger(logging.Logger):
    def __init__(
        self,
        name,
        level,
        filename=None,
        filemode="a",
        stream=None,
        format_str=None,
        dateformat=None,
        style="%",
    ):
        super().__init__(name, level)
        if filename is not None:
            handler = logging.FileHandler(filename, filemode)  # type:ignore
        else:
            handler = logging.StreamHandler(stream)  # type:ignore
        self._formatter = logging.Formatter(format_str, dateformat, style)
        handler.setFormatter(self._formatter)
        super().addHandler(handler)
        self._file_handlers = {}

    def add_filehandler(self, log_filename: str) -> None:
        if log_filename in self._file_handlers:
            return
        filehandler = logging.FileHandler(log_filename)
        filehandler.setFormatter(self._formatter)
        self.addHandler(filehandler)
        self._file_handlers[log_filename] = filehandler

    def configure(
        self, log_file: Optional[str] = None, verbose: bool = False
    ) -> None:
        r"""Apply the ``LOG_FILE`` / ``VERBOSE`` settings of a run config."""
        self.setLevel(logging.DEBUG if verbose else logging.INFO)
        if log_file:
            self.add_filehandler(log_file)


logger = VisareaLogger(
    name="visarea", level=logging.INFO, format_str="%(asctime)-15s %(message)s"
)
