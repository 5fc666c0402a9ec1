import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = []


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, text = marker.args
    status = "PASS" if call.excinfo is None else "FAIL"
    _CRITERIA.append((number, status, text, call.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text, duration in sorted(_CRITERIA):
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {text} ({duration:.1f}s)")


@pytest.fixture
def rng():
    return random.Random(20261016)
