# coding: utf-8
#
# multiprocessing.py
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
"""Multiprocessing utils.

Tasks run in a child process so that neither recursion limits nor logging
configuration of a verification run leak into the FireWorks process.
Exceptions raised in the child are forwarded to the parent together with
the child's traceback.
"""

import logging
import multiprocessing
import queue
import traceback

from abc import abstractmethod
from typing import Callable, Iterable, List

from fireworks.core.firework import FiretaskBase, FWAction

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

POLL_INTERVAL = 0.05


class Process(multiprocessing.Process):
    """Process that hands an exception of its target back to the parent."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._parent_conn, self._child_conn = multiprocessing.Pipe()
        self._exception = None

    def run(self):
        try:
            super().run()
            self._child_conn.send(None)
        except Exception as exc:
            self._child_conn.send((exc, traceback.format_exc()))
            raise

    @property
    def exception(self):
        if self._parent_conn.poll():
            self._exception = self._parent_conn.recv()
        return self._exception


class RunAsChildProcessTask(FiretaskBase):
    """Run a task in a child process.

    Derived tasks implement :meth:`_run_task_as_child_process` and put
    exactly one FWAction into the queue.
    """
    _fw_name = 'RunAsChildProcessTask'
    required_params: List[str] = []
    optional_params: List[str] = []

    @abstractmethod
    def _run_task_as_child_process(self, fw_spec: dict, q: multiprocessing.Queue,
                                   e: multiprocessing.Event = None) -> None:
        """Replaces run_task in derivatives, q.put(fw_action) replaces return fw_action."""
        ...

    def run_task(self, fw_spec: dict) -> FWAction:
        logger = logging.getLogger(__name__)
        q = multiprocessing.Queue()
        e = multiprocessing.Event()
        p = Process(target=self._run_task_as_child_process, args=(fw_spec, q, e))
        p.start()
        while True:
            try:
                fw_action = q.get(timeout=POLL_INTERVAL)
                break
            except queue.Empty:
                pass
            if p.exception:
                error, child_traceback = p.exception
                p.join()
                raise error from ChildProcessError(child_traceback)
            if getattr(self, '_stop_event', None) is not None and self._stop_event.is_set():
                e.set()
            if not p.is_alive() and q.empty():
                raise ChildProcessError("Child process of {} exited with code {} and no result.".format(
                    self._fw_name, p.exitcode))
        p.join()
        logger.debug("Child process of {} finished.".format(self._fw_name))
        return fw_action

    def set_stop_event(self, e):
        self._stop_event = e


def run_in_parallel(func: Callable, instances: Iterable, jobs: int = 1) -> list:
    """Map func over instances, in a process pool for jobs > 1; results keep the input order."""
    logger = logging.getLogger(__name__)
    instances = list(instances)
    if jobs <= 1 or len(instances) <= 1:
        return [func(instance) for instance in instances]
    logger.debug("Mapping {} instances over {} processes.".format(len(instances), jobs))
    with multiprocessing.Pool(min(jobs, len(instances))) as pool:
        return pool.map(func, instances)
