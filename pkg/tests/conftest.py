import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from acc_ybe import AccParams

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# lines recorded by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES = []


def random_params(rng, zero_fraction=0.0):
    """Generic complex AccParams; optionally zero out a random subset."""
    vals = rng.normal(size=19) + 1j * rng.normal(size=19)
    if zero_fraction:
        vals[rng.random(19) < zero_fraction] = 0
    return AccParams.from_array(vals)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
