import random

import pytest

from skewflanders import gf_spec, quaternion_spec


@pytest.fixture(scope="session")
def F2():
    return gf_spec(2, 1)


@pytest.fixture(scope="session")
def F3():
    return gf_spec(3, 1)


@pytest.fixture(scope="session")
def F4():
    return gf_spec(2, 2)


@pytest.fixture(scope="session")
def H():
    return quaternion_spec()


@pytest.fixture(params=["F2", "F3", "F4", "H"])
def any_ring(request):
    return request.getfixturevalue(request.param)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
