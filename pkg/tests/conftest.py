import numpy as np
import pytest

from ssarc import SolverConfig, builtin_collection, solve


@pytest.fixture(scope='session')
def collection():
    return builtin_collection()


@pytest.fixture(scope='session')
def benchmark_runs(collection):
    """Default-configuration solve of every built-in problem, computed once."""
    cfg = SolverConfig()
    return {p.name: (p, solve(p, cfg)) for p in collection}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from report import LINES
    if LINES:
        terminalreporter.section('acceptance criteria')
        for line in LINES:
            terminalreporter.write_line(line)
