import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from spreadcodes import kernels  # noqa: E402
from spreadcodes.fields import PrimeField, make_extension_field  # noqa: E402
from spreadcodes.spreadcode import build_code  # noqa: E402

from acclog import LINES as ACCEPTANCE_LINES  # noqa: E402


@pytest.fixture(scope="session")
def F2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def F8():
    return make_extension_field(2, [1, 1, 0, 1])


@pytest.fixture(scope="session")
def code23():
    return build_code(2, 3, 2)


@pytest.fixture(scope="session")
def code35():
    return build_code(3, 5, 2)


@pytest.fixture(params=kernels.available_backends())
def each_backend(request):
    with kernels.use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
