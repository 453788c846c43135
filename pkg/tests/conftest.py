"""Common test fixtures.

This module provides seeded generators, frequently used named states and a
helper that runs the CLI in-process and captures its exit code and output.
"""
import pytest
import numpy as np

from slocc.main import main
from slocc.serializers import serialize_state
from slocc.states import gen_chi, gen_ghz, gen_w


@pytest.fixture
def rng():
    """Seeded numpy generator, fresh for every test."""
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz2():
    return gen_ghz(2)


@pytest.fixture
def chi1_4():
    return gen_chi(1, 4)


@pytest.fixture
def chi3_4():
    return gen_chi(3, 4)


@pytest.fixture
def state_file(tmp_path):
    """Write a state to a JSON file and return its path as a string."""
    def write(state, name=None):
        path = tmp_path / (name or f"{state.label or 'state'}_{state.n}.json")
        path.write_text(serialize_state(state))
        return str(path)
    return write


@pytest.fixture
def ghz4_file(state_file):
    return state_file(gen_ghz(4))


@pytest.fixture
def w4_file(state_file):
    return state_file(gen_w(4))


@pytest.fixture
def run_cli(capsys):
    """Run ``slocc`` with the given arguments; returns (exit code, stdout, stderr)."""
    def run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run
