# coding: utf-8
#
# logging.py
#
# Copyright (C) 2026 IMTEK Simulation
# Author: tamedynfw developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
"""Logging utils."""

import io
import json
import logging
import sys

from fireworks.fw_config import FW_LOGGING_FORMAT

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

DEFAULT_FORMATTER = logging.Formatter(FW_LOGGING_FORMAT)


def _log_nested_dict(log_func, dct):
    for line in json.dumps(dct, indent=2, default=str, sort_keys=True).splitlines():
        log_func(line)


def as_level(level) -> int:
    """Numeric level from a number or a level name such as 'info'."""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ValueError("Unknown log level '{}'.".format(level))
    return value


def level_from_verbosity(verbosity: int, base=logging.WARNING) -> int:
    """Every -v lowers the level by one step, not below DEBUG."""
    return max(logging.DEBUG, as_level(base) - 10 * verbosity)


class LoggingContext:
    """Attach a handler to and set the level of a logger within a context.

    Without an explicit logger the root logger is modified.
    """

    def __init__(self, logger=None, handler=None, level=None, close=False):
        self.logger = logger
        self.level = None if level is None else as_level(level)
        self.handler = handler
        self.close = close
        self._previous_level = None

    def __enter__(self):
        if self.logger is None:
            self.logger = logging.getLogger('')
        if self.level is not None:
            self._previous_level = self.logger.level
            self.logger.setLevel(self.level)
        if self.handler is not None:
            self.logger.addHandler(self.handler)
        return self

    def __exit__(self, et, ev, tb):
        if self.level is not None:
            self.logger.setLevel(self._previous_level)
        if self.handler is not None:
            self.logger.removeHandler(self.handler)
            if self.close:
                self.handler.close()
        # exceptions propagate


class CapturedLog(LoggingContext):
    """Collect formatted log records of a context in memory."""

    def __init__(self, logger=None, level=None):
        self.stream = io.StringIO()
        handler = logging.StreamHandler(self.stream)
        handler.setFormatter(DEFAULT_FORMATTER)
        super().__init__(logger=logger, handler=handler, level=level, close=False)

    def getvalue(self) -> str:
        self.stream.flush()
        return self.stream.getvalue()


def configure_logging(level=logging.WARNING, stream=None) -> logging.Handler:
    """Route the root logger to stderr in the FireWorks format, replacing earlier handlers of ours."""
    root = logging.getLogger('')
    for handler in list(root.handlers):
        if getattr(handler, '_tamedynfw', False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr if stream is None else stream)
    handler.setFormatter(DEFAULT_FORMATTER)
    handler._tamedynfw = True
    root.addHandler(handler)
    root.setLevel(as_level(level))
    return handler
