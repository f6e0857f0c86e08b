"""Shared fixtures: the expensive artifacts (fresh calibration constants and
the T = 2000 mean-square ladders) are computed once per session and reused by
the unit tests and the acceptance suite."""

import time
from fractions import Fraction

import pytest

from lerchzeta import afe, meansquare

MS_PAIRS = ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(1)), (Fraction(1), Fraction(1)))
MS_CHECKPOINTS = (250.0, 500.0, 1000.0, 2000.0)

_REPORT_LINES = []


def report(line: str) -> None:
    """Record an acceptance pass/fail line; echoed in the terminal summary."""
    _REPORT_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _REPORT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT_LINES:
            terminalreporter.line(line)


@pytest.fixture(scope="session")
def calibration():
    """Freshly fitted envelope constants (kind -> C_fit)."""
    return {kind: afe.envelope_fit(kind, afe.default_calibration_grid(kind))
            for kind in afe.KINDS}


def _ladders(method):
    start = time.perf_counter()
    out = {}
    for a, l in MS_PAIRS:
        out[(a, l)] = meansquare.mean_square_ladder(
            2000.0, a, l, step=0.02, method=method,
            checkpoints=MS_CHECKPOINTS)
    return out, time.perf_counter() - start


@pytest.fixture(scope="session")
def afe_ladders():
    """(records by pair, elapsed seconds), split-sum integrand."""
    return _ladders("afe")


@pytest.fixture(scope="session")
def oracle_ladders():
    """(records by pair, elapsed seconds), Euler-Maclaurin integrand."""
    return _ladders("oracle")
