import sys
from pathlib import Path

import numpy as np
import pytest

from cohdetect import kernels

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Each kernel module in turn (numba and the numpy fallback)."""
    return kernels.BACKENDS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def gate(request):
    """Record one acceptance line, echo it, and fail the test if the criterion failed."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash[ACCEPTANCE].append(line)
        print(line)
        assert ok, line
    return record
