import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ivss.frame_io import FrameRGB

# --- Shared frame builders ---


@pytest.fixture
def solid():
    def make(color, width=4, height=4):
        arr = np.empty((height, width, 3), dtype=np.uint8)
        arr[:] = color
        return FrameRGB(arr)

    return make


def frame_of(rows):
    """Build a FrameRGB from nested lists of (r, g, b) tuples."""
    return FrameRGB(np.array([[list(c) for c in row] for row in rows], dtype=np.uint8))


# --- Acceptance criterion reporting ---

_acceptance_results: list[tuple[str, bool]] = []


def record_criterion(name: str, passed: bool = True) -> None:
    _acceptance_results.append((name, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _acceptance_results:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
