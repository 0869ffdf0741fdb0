import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hamkrylov.problems import PROBLEM_IDS, build_problem

_instances = {}


@pytest.fixture(scope="session")
def problem():
    """Factory fixture caching built problem instances across the session.

    Building ns1/ns2 involves dense-ish spectral differentiation setup, so
    each instance is constructed once and shared.
    """

    def get(pid):
        if pid not in _instances:
            _instances[pid] = build_problem(pid)
        return _instances[pid]

    return get


@pytest.fixture(scope="session")
def all_problems(problem):
    return [problem(pid) for pid in PROBLEM_IDS]


@pytest.fixture(scope="session")
def oracle_cache(tmp_path_factory):
    """Shared on-disk cache so dense oracles are factorized once per session."""
    return tmp_path_factory.mktemp("oracles")
