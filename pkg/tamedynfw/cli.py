# coding: utf-8
#
# cli.py
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
"""Command line interface ``tamedynfw``.

Examples::

    tamedynfw space build --rank w+1 --out s.txt
    tamedynfw cb-rank s.txt
    tamedynfw beta-rank s.txt --fn parity-flip --eps 1/2
    tamedynfw dendrite --mode twocolor --depth 2 --out x2.txt
    tamedynfw export x2.txt --out x2.dot
    tamedynfw verify --suite all --seed 7 --trials 100

Exit codes are 0 if every check passes, 1 if a check fails and 2 on usage,
parse or validation errors. Randomized suites default to seed 0.
"""

import argparse
import logging
import sys

from tamedynfw import __version__
from tamedynfw.core.dendrite import TWOCOLOR, WAZEWSKI
from tamedynfw.fireworks.user_objects.firetasks.verification_tasks import (
    FUNCTIONS, SUITES, BetaRankTask, BuildSpaceTask, BuildStageTask, CBRankTask, EllisTask, ExportDotTask,
    VerifyTask)
from tamedynfw.utils.config import load_config
from tamedynfw.utils.logging import configure_logging, level_from_verbosity

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

EXIT_USAGE = 2

TASKS = {
    'space': BuildSpaceTask,
    'cb-rank': CBRankTask,
    'beta-rank': BetaRankTask,
    'ellis': EllisTask,
    'dendrite': BuildStageTask,
    'verify': VerifyTask,
    'export': ExportDotTask,
}

# parsed arguments that are not task parameters
_GLOBAL_ARGS = ('command', 'action', 'verbose')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='tamedynfw', description="Exact finite models of tame dynamical systems and their verification.")
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    parser.add_argument('--config', help="YAML configuration file")
    parser.add_argument('--seed', type=int, help="random seed of randomized suites, default: 0")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="more log output, may be repeated")
    # --seed is accepted after the subcommand as well, without clobbering a global value
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument('--seed', type=int, default=argparse.SUPPRESS, help="random seed of randomized suites")
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    space = subparsers.add_parser('space', parents=[seeded], help="build a countable compact space")
    space.add_argument('action', choices=['build'])
    space.add_argument('--rank', required=True, help="Cantor-Bendixson rank, a successor ordinal like w+1")
    space.add_argument('--out', help="space file to write")

    cb_rank = subparsers.add_parser('cb-rank', parents=[seeded], help="Cantor-Bendixson rank of a space file")
    cb_rank.add_argument('space', help="space file")

    beta_rank = subparsers.add_parser(
        'beta-rank', parents=[seeded], help="oscillation rank on the flip system over a space file")
    beta_rank.add_argument('space', help="space file")
    beta_rank.add_argument('--fn', choices=sorted(FUNCTIONS), default='parity-flip')
    beta_rank.add_argument('--eps', help="rational threshold p/q, default: supremum over all thresholds")

    ellis = subparsers.add_parser('ellis', parents=[seeded], help="audit clopen approximants of the parity flip")
    ellis.add_argument('space', nargs='?', help="space file, default: the space of rank w+1")
    ellis.add_argument('--samples', type=int)
    ellis.add_argument('--size', type=int)
    ellis.add_argument('--trials', type=int)

    dendrite = subparsers.add_parser('dendrite', parents=[seeded], help="build and audit a tree stage")
    dendrite.add_argument('--mode', choices=[WAZEWSKI, TWOCOLOR], default=WAZEWSKI)
    dendrite.add_argument('--depth', type=int)
    dendrite.add_argument('--orders', nargs='+', help="ramification orders, w for omega")
    dendrite.add_argument('--width', type=int)
    dendrite.add_argument('--omega-degree', type=int)
    dendrite.add_argument('--marks-per-arc', type=int)
    dendrite.add_argument('--blocks', type=int)
    dendrite.add_argument('--out', help="stage file to write")

    verify = subparsers.add_parser('verify', parents=[seeded], help="run verification suites")
    verify.add_argument('--suite', choices=[*SUITES, 'all'], default='all')
    verify.add_argument('--trials', type=int)
    verify.add_argument('--jobs', type=int)
    verify.add_argument('--out', help="report file to write")

    export = subparsers.add_parser('export', parents=[seeded], help="DOT export of a stage file")
    export.add_argument('stage', help="stage file")
    export.add_argument('--out', help="DOT file to write")
    export.add_argument('--name', help="graph name")
    return parser


def task_from_args(args: argparse.Namespace):
    """Task of the subcommand, parameters are the flags given."""
    spec = {k: v for k, v in vars(args).items() if k not in _GLOBAL_ARGS and v is not None}
    return TASKS[args.command](**spec)


def run(argv=None, stdout=None) -> int:
    """Execute a command line, returns the exit code."""
    logger = logging.getLogger(__name__)
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    try:
        config = load_config(args.config, {'seed': args.seed})
        configure_logging(level_from_verbosity(args.verbose, base=config['loglevel']))
        task = task_from_args(args)
        logger.debug("Running {} with {}.".format(task._fw_name, dict(task)))
        fw_action = task.run_task({})
    except (ValueError, OSError) as exc:
        logger.debug("{} failed.".format(args.command), exc_info=True)
        print("tamedynfw {}: error: {}".format(args.command, exc), file=sys.stderr)
        return EXIT_USAGE
    output = fw_action.stored_data['output']
    stdout.write(output['text'])
    stdout.flush()
    return output['exit_status']


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
