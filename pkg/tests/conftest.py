import os

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from terrain_lit.terrain import PROFILES, generate_random, parse_terrain

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "thorough", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

T1_TEXT = "3\n0 0\n10 0\n5 5\n"
T2_TEXT = "4\n0 0\n10 0\n8 4\n2 4\n"
T3_TEXT = "5\n0 0\n10 0\n7 6\n5 2\n2 4\n"
SHEARED_TEXT = "4\n0 0\n10 5\n8 9\n2 7\n"


@pytest.fixture
def t1():
    return parse_terrain(T1_TEXT)


@pytest.fixture
def t2():
    return parse_terrain(T2_TEXT)


@pytest.fixture
def t3():
    return parse_terrain(T3_TEXT)


def terrains(min_n=4, max_n=24):
    """Seeded random terrains over all generator profiles."""
    return st.builds(
        generate_random,
        st.integers(min_n, max_n),
        st.integers(0, 10**6),
        st.sampled_from(PROFILES),
    )


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(k, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
