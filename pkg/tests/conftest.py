import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stuquandle import affine, shipped  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def z3_affine():
    return affine(3, 2, 1, 0)


@pytest.fixture(scope="session")
def hopf_z3():
    return shipped("hopf_z3")


@pytest.fixture(scope="session")
def z4():
    return affine(4, 1, 2, 1)


@pytest.fixture(scope="session")
def z12():
    return affine(12, 11, 10, 11)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
