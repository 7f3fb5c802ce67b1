import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from entstruct import build_pure_state, state_from_vector  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20021)


@pytest.fixture
def bell():
    s = 1 / np.sqrt(2)
    return build_pure_state([2, 2], [((0, 0), s), ((1, 1), s)])


@pytest.fixture
def bell_times_zero():
    """Bell pair on particles 1, 2 with particle 3 in |0>."""
    v = np.kron(np.array([1, 0, 0, 1]) / np.sqrt(2), [1, 0])
    return state_from_vector([2, 2, 2], v)


@pytest.fixture
def product3():
    return build_pure_state([3, 3, 3], [((0, 1, 2), 1.0)])


# closed forms of the reduced operators of the four-level three-particle state
@pytest.fixture
def star_marginals():
    rho1 = np.diag([0.5, 0.5, 0, 0]).astype(complex)
    rho2 = np.eye(4, dtype=complex) / 4
    rho3 = np.diag([0.5, 0, 0.5, 0]).astype(complex)
    return {"1": rho1, "2": rho2, "3": rho3, "13": np.kron(rho1, rho3)}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, title, detail in sorted(RESULTS):
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
