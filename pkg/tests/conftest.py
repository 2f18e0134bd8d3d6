import numpy as np
import pytest

from curvop.generators import rng_for

_ACCEPTANCE = []


@pytest.fixture
def rng():
    return rng_for(20240101)


@pytest.fixture
def acceptance_log():
    """Record one summary line per acceptance criterion; printed at the end of the run."""

    def record(number, title, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}: {detail}"
        _ACCEPTANCE.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)


def random_unit(dim, rng):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
