from __future__ import annotations

import itertools

from hypothesis import strategies as st

from fatpoints.core import LinearSystem


def brute_virtual_dimension(d: int, mults) -> int:
    """Count monomials and derivative conditions by enumeration."""
    monomials = sum(1 for e in itertools.product(range(d + 1), repeat=4) if sum(e) == d) if d >= 0 else 0
    conditions = 0
    for m in mults:
        if m > 0:
            conditions += sum(1 for b in itertools.product(range(m), repeat=3) if sum(b) <= m - 1)
    return monomials - conditions - 1


@st.composite
def systems(draw, max_d=20, max_m=10, max_r=12, min_r=0):
    d = draw(st.integers(0, max_d))
    ms = draw(st.lists(st.integers(0, max_m), min_size=min_r, max_size=max_r))
    return LinearSystem(d, tuple(ms))


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
