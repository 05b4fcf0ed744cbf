import random
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from vsg import generate as gen

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_configure(config):
    config._vsg_acceptance = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_vsg_acceptance", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


class _Criterion:
    def __init__(self, number, limit):
        self.number = number
        self.limit = limit
        self.detail = ""


@pytest.fixture
def criterion(request):
    """Context manager that records one PASS/FAIL line per acceptance criterion."""

    @contextmanager
    def run(number, limit):
        c = _Criterion(number, limit)
        start = time.perf_counter()
        ok = False
        try:
            yield c
            elapsed = time.perf_counter() - start
            ok = elapsed < limit
            if not ok:
                c.detail += f" (took {elapsed:.1f}s, limit {limit}s)"
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number}: {'PASS' if ok else 'FAIL'} [{elapsed:.2f}s] {c.detail}".rstrip()
            print(line)
            request.config._vsg_acceptance.append(line)
        assert ok, line

    return run


@st.composite
def codes(draw, max_vertices=3, max_crossings=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return gen.random_code(random.Random(seed), max_vertices=max_vertices, max_crossings=max_crossings)


@pytest.fixture
def rng():
    return random.Random(20261019)
