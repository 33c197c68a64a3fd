from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"

_criteria: list[tuple[str, bool, str]] = []


def within_cell(grid, idx, p, tol=1e-9):
    """True when grid sample ``idx`` is within one cell of ``p`` along both axes."""
    q = grid.point(*idx)
    return abs(q.x - p[0]) <= grid.spacing + tol and abs(q.y - p[1]) <= grid.spacing + tol


@pytest.fixture
def criterion():
    """Record an acceptance verdict, print it in the terminal summary, and assert it."""

    def record(label: str, ok: bool, detail: str = ""):
        _criteria.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
