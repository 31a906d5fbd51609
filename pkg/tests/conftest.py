import pytest
from hypothesis import strategies as st

from cyclehall.quiver_core import Multipartition

ACCEPTANCE_LINES = []


@st.composite
def multipartitions(draw, n=None, max_total=5):
    if n is None:
        n = draw(st.integers(1, 3))
    comps = []
    budget = max_total
    for _ in range(n):
        parts = draw(st.lists(st.integers(1, max(budget, 1)), max_size=budget))
        parts = [x for x in parts if x <= budget]
        kept = []
        for x in sorted(parts, reverse=True):
            if sum(kept) + x <= budget:
                kept.append(x)
        budget -= sum(kept)
        comps.append(tuple(kept))
    return Multipartition(tuple(comps))


@pytest.fixture
def acceptance_log():
    def record(number, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
