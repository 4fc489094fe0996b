import math

import pytest

from qwparrondo.state import QUBIT, QUTRIT, new_localized

R3 = 1 / math.sqrt(3)


@pytest.fixture
def eq5_state():
    """Walker at the origin with coin (|0> + |1> - i|2>)/sqrt3, slots (|1>, |0>, |2>)."""
    return new_localized(0, [R3, R3, -1j * R3], QUTRIT)


@pytest.fixture
def qubit_start():
    return new_localized(0, [1 / math.sqrt(2), -1j / math.sqrt(2)], QUBIT)


def pytest_terminal_summary(terminalreporter):
    reports = [
        r
        for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if r.when == "call" and "test_acceptance.py" in r.nodeid
    ]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if r.passed else 'FAIL'}  {name}")
