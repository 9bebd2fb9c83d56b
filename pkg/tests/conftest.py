import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ncomplexes import PrimeField  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
