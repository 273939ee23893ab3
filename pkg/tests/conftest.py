import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bellbound.family7 import CRITICAL, GHZ_POINT, state_from_coeffs  # noqa: E402
from bellbound.state import make_state  # noqa: E402

ACCEPTANCE_LINES: dict[str, str] = {}

R = 1 / math.sqrt(2)


@pytest.fixture
def bell_pair():
    return make_state(2, [("00", R), ("11", R)])


@pytest.fixture
def ghz4():
    return make_state(4, [("0000", R), ("1111", R)])


@pytest.fixture
def critical_state():
    return state_from_coeffs(CRITICAL)


@pytest.fixture
def ghz_family_state():
    return state_from_coeffs(GHZ_POINT)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance():
    """Record a one-line verdict per acceptance criterion for the terminal summary."""

    def record(key: str, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES[key] = f"[{'PASS' if passed else 'FAIL'}] {key}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split()[1])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
