import math

import pytest

from nfccoil import ChipModel, CoilGeometry

MU0 = 4e-7 * math.pi


@pytest.fixture
def antenna1():
    return CoilGeometry("rectangular", 160.0, 80.0, 4, 0.5, 2.0, 0.0175)


@pytest.fixture
def antenna2():
    return CoilGeometry("square", 80.0, 80.0, 3, 0.6, 2.0, 0.0175)


@pytest.fixture
def lossless_chip():
    return ChipModel(50e-12, math.inf)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
