import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from projplanes.extension import q_plane  # noqa: E402
from projplanes.pg import gf, pg2  # noqa: E402
from projplanes.plane import new_plane  # noqa: E402


@pytest.fixture(scope="session")
def fano():
    return pg2(gf(2))


@pytest.fixture(scope="session")
def quadrangle():
    return new_plane(["a", "b", "c", "d"], [])


@pytest.fixture(scope="session")
def qplane():
    return q_plane()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line per acceptance criterion."""
    def record(number: int, ok: bool, text: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
