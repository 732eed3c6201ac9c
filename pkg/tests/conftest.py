from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from famcake.allocation import Piece
from famcake.measure import ValueMeasure

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coords = st.fractions(min_value=0, max_value=1, max_denominator=24)


@st.composite
def measures(draw, max_segments: int = 4) -> ValueMeasure:
    inner = draw(st.lists(coords.filter(lambda x: 0 < x < 1), max_size=max_segments - 1, unique=True))
    bps = sorted(inner) + [Fraction(1)]
    raw = draw(st.lists(st.integers(0, 9), min_size=len(bps), max_size=len(bps)).filter(any))
    segs, prev = [], Fraction(0)
    for b, r in zip(bps, raw):
        segs.append((b, Fraction(r) / (b - prev)))
        prev = b
    return ValueMeasure.rescaled(segs)


@st.composite
def pieces(draw, max_intervals: int = 3) -> Piece:
    pts = sorted(draw(st.lists(coords, max_size=2 * max_intervals, unique=True)))
    if len(pts) % 2:
        pts = pts[:-1]
    return Piece(tuple(zip(pts[::2], pts[1::2])))


def pytest_configure(config):
    config._famcake_acceptance = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_famcake_acceptance", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    """Record a one-line PASS/FAIL summary for the terminal report."""
    return request.config._famcake_acceptance.append
