"""Shared fixtures and the acceptance-summary reporter.

Acceptance tests register one verdict per criterion through the
``acceptance`` fixture; after the run a summary section prints one
PASS/FAIL line per criterion so the gate status is readable without
digging through tracebacks.
"""

import numpy as np
import pytest

from sqwell.experiments import REFERENCE_WELLS

# criterion number -> (passed, one line of detail)
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record a criterion verdict, then assert it."""

    def _check(criterion: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_RESULTS[criterion] = (bool(passed), detail)
        assert passed, f"criterion {criterion}: {detail}"

    return _check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[n]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {n}: {word} - {detail}")


@pytest.fixture(scope="session")
def wells():
    return REFERENCE_WELLS


@pytest.fixture(scope="session")
def well_i(wells):
    return wells["I"]


@pytest.fixture(scope="session")
def well_ii(wells):
    return wells["II"]


@pytest.fixture(scope="session")
def well_v(wells):
    return wells["V"]


@pytest.fixture
def rng():
    """Deterministic generator; reseeded per test so order cannot matter."""
    return np.random.default_rng(20260822)
