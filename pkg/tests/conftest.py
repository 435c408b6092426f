from __future__ import annotations

import json
from pathlib import Path

import pytest

from acceptance_log import LINES

ORACLES = Path(__file__).parent / "data" / "oracles.json"

@pytest.fixture(scope="session")
def oracles() -> dict:
    return json.loads(ORACLES.read_text())


def pytest_terminal_summary(terminalreporter):
    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(LINES):
        terminalreporter.write_line(LINES[n])
