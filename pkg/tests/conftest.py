import numpy as np
import pytest

from msrcode.c1 import build_c1
from msrcode.c2 import build_c2


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def code634():
    return build_c1(6, 3, 4)


@pytest.fixture(scope="session")
def code635():
    return build_c1(6, 3, 5)


@pytest.fixture(scope="session")
def code_c2():
    return build_c2(4, 2, 2)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            if "test_acceptance.py::" in rep.nodeid:
                name = rep.nodeid.split("::", 1)[1]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"[{status}] {name}")
