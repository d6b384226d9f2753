import random

import pytest
from hypothesis import HealthCheck, settings

from matgroup_interp.ring import RingSpec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=["gf:2", "gf:3", "gf:5", "gf:7", "zmod:6"])
def finite_spec(request):
    return RingSpec.parse(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
