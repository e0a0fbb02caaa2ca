from __future__ import annotations

import sys
from pathlib import Path

import pytest

DATA = Path(__file__).with_name("data")


def consts(a):
    """Structure constants as plain nested lists, for the oracles."""
    return [[list(a.structconsts[i][j]) for j in range(a.dim)] for i in range(a.dim)]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.pytest_summary_lines():
        terminalreporter.write_line(line)
