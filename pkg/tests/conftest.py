import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES: list[str] = []


class Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)


@contextmanager
def _criterion(number: int, title: str, budget: float | None = None):
    c = Criterion(number, title)
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield c
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            c.note(f"over time budget: {elapsed:.2f}s > {budget:g}s")
            raise AssertionError(f"criterion {number} took {elapsed:.2f}s, budget {budget:g}s")
        status = "PASS"
    except pytest.xfail.Exception:
        status = "FAIL (expected, see note)"
        raise
    finally:
        elapsed = time.perf_counter() - start
        line = f"[acceptance] criterion {number} {status}: {title} ({elapsed:.2f}s)"
        if c.notes:
            line += " | " + " | ".join(c.notes)
        ACCEPTANCE_LINES.append(line)
        print(line)


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
