# coding: utf-8
"""Test verification tasks."""
import logging
import os

import pytest

from tamedynfw.core.dendrite import build_twocolor_stage, build_wazewski_stage
from tamedynfw.fireworks.user_objects.firetasks.verification_tasks import (
    BetaRankTask, BuildSpaceTask, BuildStageTask, CBRankTask, EllisTask, ExportDotTask, VerifyTask)
from tamedynfw.utils.config import ConfigurationError
from tamedynfw.utils.dict import compare
from tamedynfw.utils.logging import _log_nested_dict
from tamedynfw.utils.serialize import SerializationError, load


def _output(task, fw_spec=None):
    logger = logging.getLogger(__name__)
    fw_action = task.run_task(fw_spec or {})
    logger.debug("FWAction:")
    _log_nested_dict(logger.debug, fw_action.as_dict())
    return fw_action.stored_data['output']


def test_space_ranks_round_trip(tempdir):
    output = _output(BuildSpaceTask(rank='w+1', out='s.txt'))
    assert compare({'rank': 'w+1', 'seed': 'w', 'interval': ['0', '1'], 'path': 's.txt', 'text': ''}, output)
    assert os.path.exists('s.txt')
    assert _output(CBRankTask(space='s.txt'))['text'] == 'w+1\n'
    output = _output(BetaRankTask(space='s.txt', fn='parity-flip', eps='1/2'))
    assert compare({'rank': 'w+1', 'fn': 'parity-flip', 'eps': '1/2', 'exit_status': 0}, output)
    assert _output(BetaRankTask(space='s.txt'))['rank'] == 'w+1'
    assert _output(BetaRankTask(space='s.txt', fn='identity'))['rank'] == '1'


def test_space_without_file():
    output = _output(BuildSpaceTask(rank='3'))
    assert output['path'] is None
    assert output['text'].startswith('# tamedynfw 1\nkind space\n')


def test_params_from_fw_spec(tempdir):
    fw_spec = {'deeply': {'nested': {'rank': 'w*2+1', 'file': 'nested.txt'}}}
    _output(BuildSpaceTask(rank={'key': 'deeply->nested->rank'}, out='nested.txt'), fw_spec)
    output = _output(CBRankTask(space={'key': 'deeply->nested->file'}), fw_spec)
    assert output['rank'] == 'w*2+1'


def test_output_into_fw_spec():
    fw_action = BuildSpaceTask(rank='2', output='space', stored_data=False).run_task({})
    assert fw_action.stored_data in (None, {})
    (mod,) = fw_action.mod_spec
    assert mod['_set']['space']['seed'] == '1'


def test_store_stdlog():
    output = _output(BuildSpaceTask(rank='2', store_stdlog=True, loglevel='DEBUG'))
    assert 'BuildSpaceTask runs with configuration' in output['stdlog']


def test_stdlog_file(tempdir):
    _output(BuildSpaceTask(rank='2', stdlog_file='task.log', loglevel=logging.DEBUG))
    with open('task.log') as stream:
        assert 'BuildSpaceTask runs with configuration' in stream.read()


def test_invalid_rank():
    with pytest.raises(ValueError) as excinfo:
        BuildSpaceTask(rank='w').run_task({})
    assert isinstance(excinfo.value.__cause__, ChildProcessError)


def test_unknown_params_are_rejected():
    with pytest.raises((ConfigurationError, RuntimeError)):
        BuildSpaceTask(rank='2', colour='red').run_task({})


def test_wrong_artifact_kind(tempdir):
    _output(BuildStageTask(mode='twocolor', depth=0, out='x0.txt'))
    with pytest.raises(SerializationError):
        CBRankTask(space='x0.txt').run_task({})


def test_unknown_function(tempdir):
    _output(BuildSpaceTask(rank='2', out='s.txt'))
    with pytest.raises(ConfigurationError):
        BetaRankTask(space='s.txt', fn='square').run_task({})


def test_build_stages(tempdir, files):
    output = _output(BuildStageTask(mode='twocolor', depth=1, marks_per_arc=1, out='x1.txt'))
    stage = build_twocolor_stage(1, 1)
    assert compare({'mode': 'twocolor', 'index': 1, 'vertices': len(stage.vertices),
                    'edges': len(stage.edges), 'exit_status': 0}, output)
    assert output['report']['suite'] == 'dendrite'
    assert load('x1.txt') == stage

    output = _output(BuildStageTask(config=files['config']))
    stage = build_wazewski_stage([3, 4], 1, 1)
    assert compare({'mode': 'wazewski', 'index': 1, 'vertices': len(stage.vertices), 'exit_status': 0}, output)


def test_unknown_stage_mode():
    with pytest.raises(ConfigurationError):
        BuildStageTask(mode='fractal').run_task({})


def test_export_dot(tempdir):
    _output(BuildStageTask(mode='twocolor', depth=0, out='x0.txt'))
    output = _output(ExportDotTask(stage='x0.txt', out='x0.dot'))
    assert output['text'] == ''
    with open('x0.dot') as stream:
        dot = stream.read()
    assert dot.startswith('graph "twocolor-0" {')
    assert dot == _output(ExportDotTask(stage='x0.txt'))['text']
    output = _output(ExportDotTask(stage='x0.txt', out='named.dot', name='x0'))
    assert output['path'] == 'named.dot'
    with open('named.dot') as stream:
        assert stream.read() == _output(ExportDotTask(stage='x0.txt', name='x0'))['text']


def test_ellis():
    output = _output(EllisTask(samples=20, size=6, seed=5))
    assert output['suite'] == 'ellis'
    assert [c['id'] for c in output['checks']] == ['agreement', 'bijective', 'involutive']
    assert output['exit_status'] == 0


def test_verify_ordinal_suite():
    output = _output(VerifyTask(suite='ordinal', trials=2, seed=7))
    assert output['suite'] == 'ordinal'
    assert output['exit_status'] == 0
    assert output['text'].startswith('report ordinal\n')
    assert output['text'].endswith('fail=0 skip=0\n')


def test_verify_is_deterministic(tempdir):
    first = _output(VerifyTask(suite='ordinal', trials=2, seed=7, out='first.txt'))
    second = _output(VerifyTask(suite='ordinal', trials=2, seed=7))
    assert first['text'] == second['text']
    assert load("first.txt").as_dict() == {k: first[k] for k in ("suite", "checks", "exit_status")}


def test_verify_dynamics_suite_layout(files):
    output = _output(VerifyTask(suite='dynamics', config=files['config'], trials=2))
    assert [c['id'] for c in output['checks']] == [
        'beta-le-2', 'betweenness', 'proximal', 'pab-approx', 'rigidity', 'twocolor-pab', 'minimal', 'stab-orbit']


def test_verify_unknown_suite():
    with pytest.raises(ConfigurationError):
        VerifyTask(suite='topology').run_task({})


def test_invalid_config(files):
    with pytest.raises(ConfigurationError):
        VerifyTask(suite='ordinal', config=files['bad_config']).run_task({})
