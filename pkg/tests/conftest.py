# coding: utf-8
"""Fixtures."""
import os
import pytest
import tempfile

module_dir = os.path.abspath(os.path.dirname(__file__))


@pytest.fixture
def files():
    """Provide paths to test input files."""
    return {
        'config': os.path.join(module_dir, 'config.yml'),
        'bad_config': os.path.join(module_dir, 'bad_config.yml'),
    }


@pytest.fixture
def tempdir(request):
    """Provide clean temporary directory."""
    tmpdir = tempfile.TemporaryDirectory()
    previous_working_directory = os.getcwd()
    os.chdir(tmpdir.name)

    def finalizer():
        os.chdir(previous_working_directory)
        tmpdir.cleanup()

    request.addfinalizer(finalizer)
    return tmpdir.name
