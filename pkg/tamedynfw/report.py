# coding: utf-8
#
# report.py
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
"""Verification reports."""

import enum
import logging

from dataclasses import dataclass
from typing import Iterable, List

import jinja2

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

REPORT_TEMPLATE = """\
report {{ report.suite }}
{% for check in report.checks -%}
check {{ check.id }} {{ check.status.value }}{% if check.evidence %} {{ check.evidence }}{% endif %}
{% endfor -%}
summary pass={{ report.count('pass') }} fail={{ report.count('fail') }} skip={{ report.count('skip') }}
"""

_environment = jinja2.Environment(
    undefined=jinja2.StrictUndefined, keep_trailing_newline=True, autoescape=False)


class Status(enum.Enum):
    PASS = 'pass'
    FAIL = 'fail'
    SKIP = 'skip'


@dataclass(frozen=True)
class Check:
    id: str
    status: Status
    evidence: str = ''

    def __post_init__(self):
        if '\n' in self.evidence:
            raise ValueError("Evidence of check '{}' spans several lines.".format(self.id))


class Report:
    """Ordered list of checks of one verification suite."""

    def __init__(self, suite: str, checks: Iterable[Check] = ()):
        self.suite = suite
        self.checks: List[Check] = list(checks)

    def add(self, id: str, passed, evidence: str = '') -> Check:
        """Append a check, passed is a bool or a Status."""
        logger = logging.getLogger(__name__)
        if isinstance(passed, Status):
            status = passed
        else:
            status = Status.PASS if passed else Status.FAIL
        check = Check(id, status, evidence)
        if status == Status.FAIL:
            logger.warning("Check '{}' of suite '{}' failed: {}".format(id, self.suite, evidence))
        else:
            logger.debug("Check '{}' of suite '{}': {}".format(id, self.suite, status.value))
        self.checks.append(check)
        return check

    def extend(self, other: 'Report', prefix: str = None):
        for check in other.checks:
            check_id = check.id if prefix is None else '{}/{}'.format(prefix, check.id)
            self.checks.append(Check(check_id, check.status, check.evidence))

    def count(self, status) -> int:
        status = Status(status)
        return sum(1 for check in self.checks if check.status == status)

    @property
    def failed(self) -> List[Check]:
        return [check for check in self.checks if check.status == Status.FAIL]

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def render(self) -> str:
        return _environment.from_string(REPORT_TEMPLATE).render(report=self)

    def as_dict(self) -> dict:
        return {
            'suite': self.suite,
            'checks': [
                {'id': c.id, 'status': c.status.value, 'evidence': c.evidence} for c in self.checks],
            'exit_status': self.exit_status,
        }

    @classmethod
    def from_dict(cls, dct: dict) -> 'Report':
        return cls(dct['suite'], [Check(c['id'], Status(c['status']), c['evidence']) for c in dct['checks']])

    def __str__(self):
        return self.render()
