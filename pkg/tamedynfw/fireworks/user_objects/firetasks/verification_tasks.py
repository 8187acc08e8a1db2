# coding: utf-8
#
# verification_tasks.py
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
"""FireWorks tasks building artifacts and running verification suites.

Every task corresponds to one subcommand of the ``tamedynfw`` command line
and runs in a child process. Results end up in ``FWAction.stored_data``
and, with ``output`` set, in the spec of child fireworks.
"""

from abc import abstractmethod
from contextlib import ExitStack

import io
import logging

from fireworks.core.firework import FWAction
from fireworks.utilities.fw_serializers import ENCODING_PARAMS

from tamedynfw.core.betarank import (
    IDENTITY, PARITY_FLIP, FlipSystem, beta_rank, beta_rank_at_eps, verify_ellis, verify_rank_theorem)
from tamedynfw.core.cbspace import DEFAULT_RANKS, CBSpace, build_space, cb_rank, verify_cb_rank
from tamedynfw.core.dendrite import (
    TWOCOLOR, WAZEWSKI, TreeStage, build_twocolor_stage, build_wazewski_stage, check_stage, verify_dendrite)
from tamedynfw.core.dynamics import verify_dynamics
from tamedynfw.core.ordinal import format_ordinal, parse_ordinal, verify_ordinals
from tamedynfw.report import Report
from tamedynfw.utils.config import ConfigurationError, eps_grid, load_config, parse_fraction
from tamedynfw.utils.dict import from_fw_spec
from tamedynfw.utils.dot import to_dot, write_dot
from tamedynfw.utils.logging import DEFAULT_FORMATTER, LoggingContext, _log_nested_dict
from tamedynfw.utils.multiprocessing import RunAsChildProcessTask, run_in_parallel
from tamedynfw.utils.serialize import SerializationError, dumps, load

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

SUITES = ('ordinal', 'cbspace', 'betarank', 'dendrite', 'dynamics')

FUNCTIONS = {
    'parity-flip': PARITY_FLIP,
    'identity': IDENTITY,
}

#: random triples of the ordinal suite per configured trial
ORDINAL_TRIPLES_PER_TRIAL = 100

#: random samples of the Ellis suite per configured trial
ELLIS_SAMPLES_PER_TRIAL = 10

ELLIS_RANK = 'w+1'


def _rank_theorem_instance(args) -> Report:
    literal, eps = args
    return verify_rank_theorem(FlipSystem(build_space(parse_ordinal(literal))), eps)


def run_suite(suite: str, config: dict) -> Report:
    """Run a named verification suite, 'all' runs every suite in a fixed order."""
    logger = logging.getLogger(__name__)
    seed = config['seed']
    trials = config['trials']
    if suite == 'all':
        report = Report('all')
        for name in SUITES:
            report.extend(run_suite(name, config), prefix=name)
        return report
    logger.info("Running suite '{}' with seed {} and {} trials.".format(suite, seed, trials))
    if suite == 'ordinal':
        return verify_ordinals(seed=seed, trials=ORDINAL_TRIPLES_PER_TRIAL * trials)
    if suite == 'cbspace':
        return verify_cb_rank(DEFAULT_RANKS)
    if suite == 'betarank':
        report = Report('betarank')
        instances = [(literal, eps) for literal in DEFAULT_RANKS for eps in eps_grid(config) if eps <= 1]
        for (literal, eps), sub in zip(instances, run_in_parallel(_rank_theorem_instance, instances,
                                                                  config['jobs'])):
            report.extend(sub, prefix='{}/eps-{}'.format(literal, eps))
        ellis = verify_ellis(FlipSystem(build_space(parse_ordinal(ELLIS_RANK))), seed=seed,
                             samples=ELLIS_SAMPLES_PER_TRIAL * trials)
        report.extend(ellis, prefix='ellis')
        return report
    if suite == 'dendrite':
        dendrite = config['dendrite']
        twocolor = config['twocolor']
        return verify_dendrite(dendrite['orders'], dendrite['depth'], dendrite['width'], dendrite['omega_degree'],
                               twocolor['depth'], twocolor['marks_per_arc'], twocolor['blocks'])
    if suite == 'dynamics':
        return verify_dynamics(seed=seed, trials=trials, eps_grid=eps_grid(config))
    raise ConfigurationError("Unknown suite '{}', expected one of {}.".format(suite, ', '.join(SUITES + ('all',))))


def _report_output(report: Report) -> dict:
    output = report.as_dict()
    output['text'] = report.render()
    return output


def _load_artifact(path, kind):
    artifact = load(path)
    if not isinstance(artifact, kind):
        raise SerializationError("File '{}' holds a {}, expected a {}.".format(
            path, type(artifact).__name__, kind.__name__), 2)
    return artifact


def _write(path, text):
    with open(path, 'w') as stream:
        stream.write(text)


class VerificationTask(RunAsChildProcessTask):
    """
    A verification task ABC.

    Required params:
        None
    Optional params:
        - config (str): YAML configuration file, merged over the defaults.
            Default: None
        - config_key (str): key to dict within fw_spec with configuration
            overrides on top of the file. Default: None
        - seed (int): random seed, overrides the configuration. Default: None
        - output (str): spec key that will be used to pass the task's
            results to child fireworks. Default: None
        - dict_mod (str, default: '_set'): how to insert results into
            output key, see fireworks.utils.dict_mods
        - propagate (bool, default: None): if True, then set the
            FWAction 'propagate' flag and propagate updated fw_spec not only to
            direct children, but to all descendants down to wokflow's leaves.
        - stored_data (bool, default: True): put results into
            FWAction.stored_data
        - store_stdlog (bool, default: False): insert log output into database
        - stdlog_file (str, Default: None): print log to file
        - loglevel (str, Default: configured loglevel): loglevel for this task

    Parameters not in required_params or optional_params are rejected
    before the child process starts.
    """
    _fw_name = 'VerificationTask'
    required_params = [*RunAsChildProcessTask.required_params]
    optional_params = [
        *RunAsChildProcessTask.optional_params,
        "config",
        "config_key",
        "seed",
        "stored_data",
        "output",
        "dict_mod",
        "propagate",
        "stdlog_file",
        "store_stdlog",
        "loglevel"]

    #: task parameters that override top-level configuration keys of the same name
    config_params = ('seed',)

    @abstractmethod
    def _run_task_internal(self, fw_spec, config) -> dict:
        """Derivatives implement their functionality here, returning the output dict."""
        ...

    def check_params(self):
        known = set(self.required_params) | set(self.optional_params)
        unknown = sorted(k for k in self if k not in known and not k.startswith('_'))
        if unknown:
            raise ConfigurationError("{} does not accept {}.".format(self._fw_name, ', '.join(unknown)))
        missing = [k for k in self.required_params if k not in self]
        if missing:
            raise ConfigurationError("{} requires {}.".format(self._fw_name, ', '.join(missing)))

    def run_task(self, fw_spec):
        self.check_params()
        return super().run_task(fw_spec)

    def _config(self, fw_spec) -> dict:
        logger = logging.getLogger(__name__)
        overrides = {}
        config_key = self.get('config_key')
        if config_key is not None:
            try:
                overrides = dict(from_fw_spec({'key': config_key}, fw_spec))
            except Exception:  # key not found
                logger.warning("{} not found within fw_spec, ignored.".format(config_key))
        for key in self.config_params:
            if self.get(key) is not None:
                overrides[key] = from_fw_spec(self[key], fw_spec)
        return load_config(from_fw_spec(self.get('config'), fw_spec), overrides)

    def _run_task_as_child_process(self, fw_spec, q, e=None):
        """q is a Queue used to return fw_action."""
        stored_data = self.get('stored_data', True)
        output_key = self.get('output', None)
        dict_mod = self.get('dict_mod', '_set')
        propagate = self.get('propagate', False)

        stdlog_file = self.get('stdlog_file', None)
        store_stdlog = self.get('store_stdlog', False)

        config = self._config(fw_spec)
        loglevel = self.get('loglevel', config['loglevel'])

        with ExitStack() as stack:

            if store_stdlog:
                stdlog_stream = io.StringIO()
                logh = logging.StreamHandler(stdlog_stream)
                logh.setFormatter(DEFAULT_FORMATTER)
                stack.enter_context(
                    LoggingContext(handler=logh, level=loglevel, close=False))

            # logging to dedicated log file if desired
            if stdlog_file:
                logfh = logging.FileHandler(stdlog_file, mode='a', **ENCODING_PARAMS)
                logfh.setFormatter(DEFAULT_FORMATTER)
                stack.enter_context(
                    LoggingContext(handler=logfh, level=loglevel, close=True))

            logger = logging.getLogger(__name__)
            logger.debug("{} runs with configuration:".format(self._fw_name))
            _log_nested_dict(logger.debug, config)

            output = self._run_task_internal(fw_spec, config)

        if store_stdlog:
            stdlog_stream.flush()
            output['stdlog'] = stdlog_stream.getvalue()

        fw_action = FWAction()

        if stored_data:
            fw_action.stored_data = {'output': output}

        # 'propagate' only development feature for now
        if hasattr(fw_action, 'propagate') and propagate:
            fw_action.propagate = propagate

        if output_key:  # inject into fw_spec
            fw_action.mod_spec = [{dict_mod: {output_key: output}}]

        q.put(fw_action)


class BuildSpaceTask(VerificationTask):
    """
    Build the countable compact space of a given Cantor-Bendixson rank.

    Required params:
        - rank (str): successor ordinal literal, e.g. 'w+1'
    Optional params:
        - out (str): write the serialized space to this file. Default: None
    """
    _fw_name = 'BuildSpaceTask'
    required_params = [*VerificationTask.required_params, "rank"]
    optional_params = [*VerificationTask.optional_params, "out"]

    def _run_task_internal(self, fw_spec, config):
        logger = logging.getLogger(__name__)
        rank = parse_ordinal(str(from_fw_spec(self['rank'], fw_spec)))
        space = build_space(rank)
        text = dumps(space)
        out = self.get('out')
        if out:
            _write(out, text)
            logger.info("Wrote space of rank {} to '{}'.".format(format_ordinal(rank), out))
        return {
            'rank': format_ordinal(rank),
            'seed': format_ordinal(space.seed),
            'interval': [str(bound) for bound in space.interval],
            'path': out,
            'text': '' if out else text,
            'exit_status': 0,
        }


class CBRankTask(VerificationTask):
    """
    Cantor-Bendixson rank of a serialized space.

    Required params:
        - space (str): space file
    """
    _fw_name = 'CBRankTask'
    required_params = [*VerificationTask.required_params, "space"]
    optional_params = [*VerificationTask.optional_params]

    def _run_task_internal(self, fw_spec, config):
        space = _load_artifact(from_fw_spec(self['space'], fw_spec), CBSpace)
        rank = format_ordinal(cb_rank(space))
        return {'rank': rank, 'text': rank + '\n', 'exit_status': 0}


class BetaRankTask(VerificationTask):
    """
    Oscillation rank of a function on the two-level flip system over a serialized space.

    Required params:
        - space (str): space file
    Optional params:
        - fn (str): 'parity-flip' or 'identity'. Default: 'parity-flip'
        - eps (str): rational threshold 'p/q'; without it the supremum over
            all thresholds is returned. Default: None
    """
    _fw_name = 'BetaRankTask'
    required_params = [*VerificationTask.required_params, "space"]
    optional_params = [*VerificationTask.optional_params, "fn", "eps"]

    def _run_task_internal(self, fw_spec, config):
        sys = FlipSystem(_load_artifact(from_fw_spec(self['space'], fw_spec), CBSpace))
        name = self.get('fn', 'parity-flip')
        if name not in FUNCTIONS:
            raise ConfigurationError("Unknown function '{}', expected one of {}.".format(
                name, ', '.join(FUNCTIONS)))
        eps = self.get('eps')
        if eps is None:
            rank = beta_rank(sys, FUNCTIONS[name])
        else:
            eps = parse_fraction(eps)
            if eps <= 0:
                raise ConfigurationError("eps must be positive, got {}.".format(eps))
            rank = beta_rank_at_eps(sys, FUNCTIONS[name], eps)
        return {
            'rank': format_ordinal(rank),
            'fn': name,
            'eps': None if eps is None else str(eps),
            'text': format_ordinal(rank) + '\n',
            'exit_status': 0,
        }


class EllisTask(VerificationTask):
    """
    Audit clopen level swaps approximating the parity flip.

    Optional params:
        - space (str): space file. Default: the space of rank w+1
        - samples (int): number of random samples. Default: 10 per trial
        - size (int): maximal sample size. Default: 20
    """
    _fw_name = 'EllisTask'
    required_params = [*VerificationTask.required_params]
    optional_params = [*VerificationTask.optional_params, "space", "samples", "size", "trials"]
    config_params = ('seed', 'trials')

    def _run_task_internal(self, fw_spec, config):
        path = from_fw_spec(self.get('space'), fw_spec)
        space = build_space(parse_ordinal(ELLIS_RANK)) if path is None else _load_artifact(path, CBSpace)
        samples = int(self.get('samples', ELLIS_SAMPLES_PER_TRIAL * config['trials']))
        report = verify_ellis(FlipSystem(space), seed=config['seed'], samples=samples,
                              size=int(self.get('size', 20)))
        return _report_output(report)


class BuildStageTask(VerificationTask):
    """
    Build and audit a Wazewski or two-colour tree stage.

    Optional params:
        - mode (str): 'wazewski' or 'twocolor'. Default: 'wazewski'
        - depth (int): stage index. Default: from configuration
        - orders (list): ramification orders, 'w' for omega (wazewski only)
        - width (int): new vertices per edge and step (wazewski only)
        - omega_degree (int): degree realizing the omega marker (wazewski only)
        - marks_per_arc (int): marks per colour block (twocolor only)
        - blocks (int): colour blocks per arm (twocolor only)
        - out (str): write the serialized stage to this file. Default: None
    """
    _fw_name = 'BuildStageTask'
    required_params = [*VerificationTask.required_params]
    optional_params = [
        *VerificationTask.optional_params,
        "mode", "depth", "orders", "width", "omega_degree", "marks_per_arc", "blocks", "out"]

    def _run_task_internal(self, fw_spec, config):
        logger = logging.getLogger(__name__)
        mode = self.get('mode', WAZEWSKI)
        if mode == WAZEWSKI:
            params = dict(config['dendrite'])
            for key in ('depth', 'orders', 'width', 'omega_degree'):
                if self.get(key) is not None:
                    params[key] = from_fw_spec(self[key], fw_spec)
            stage = build_wazewski_stage(params['orders'], int(params['depth']), int(params['width']),
                                         params['omega_degree'])
        elif mode == TWOCOLOR:
            params = dict(config['twocolor'])
            for key in ('depth', 'marks_per_arc', 'blocks'):
                if self.get(key) is not None:
                    params[key] = from_fw_spec(self[key], fw_spec)
            stage = build_twocolor_stage(int(params['depth']), int(params['marks_per_arc']), int(params['blocks']))
        else:
            raise ConfigurationError("Unknown stage mode '{}', expected '{}' or '{}'.".format(
                mode, WAZEWSKI, TWOCOLOR))
        report = check_stage(stage)
        text = dumps(stage)
        out = self.get('out')
        if out:
            _write(out, text)
            logger.info("Wrote {} stage {} to '{}'.".format(stage.mode, stage.index, out))
        return {
            'mode': stage.mode,
            'index': stage.index,
            'vertices': len(stage.vertices),
            'edges': len(stage.edges),
            'report': report.as_dict(),
            'path': out,
            'text': text if not out else report.render(),
            'exit_status': report.exit_status,
        }


class VerifyTask(VerificationTask):
    """
    Run a verification suite.

    Optional params:
        - suite (str): 'ordinal', 'cbspace', 'betarank', 'dendrite',
            'dynamics' or 'all'. Default: 'all'
        - trials (int): randomized instances per check. Default: from configuration
        - jobs (int): worker processes for independent instances. Default: from configuration
        - out (str): write the serialized report to this file. Default: None
    """
    _fw_name = 'VerifyTask'
    required_params = [*VerificationTask.required_params]
    optional_params = [*VerificationTask.optional_params, "suite", "trials", "jobs", "out"]
    config_params = ('seed', 'trials', 'jobs')

    def _run_task_internal(self, fw_spec, config):
        report = run_suite(self.get('suite', 'all'), config)
        output = _report_output(report)
        out = self.get('out')
        if out:
            _write(out, dumps(report))
        output['path'] = out
        return output


class ExportDotTask(VerificationTask):
    """
    Export a serialized stage as Graphviz DOT.

    Required params:
        - stage (str): stage file
    Optional params:
        - out (str): write the DOT graph to this file. Default: None
        - name (str): graph name. Default: mode and index of the stage
    """
    _fw_name = 'ExportDotTask'
    required_params = [*VerificationTask.required_params, "stage"]
    optional_params = [*VerificationTask.optional_params, "out", "name"]

    def _run_task_internal(self, fw_spec, config):
        stage = _load_artifact(from_fw_spec(self['stage'], fw_spec), TreeStage)
        out = self.get('out')
        if out:
            write_dot(stage, out, self.get('name'))
            return {'text': '', 'path': out, 'exit_status': 0}
        return {'text': to_dot(stage, self.get('name')), 'path': None, 'exit_status': 0}
