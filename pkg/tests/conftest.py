import pytest

from cuspsum.forms import generate_delta
from cuspsum.sums import partial_sums


@pytest.fixture(scope="session")
def delta_4000():
    return generate_delta(4000)


@pytest.fixture(scope="session")
def psums_4000(delta_4000):
    return partial_sums(delta_4000)


@pytest.fixture(scope="session")
def delta_20000():
    return generate_delta(20000)


@pytest.fixture(scope="session")
def psums_20000(delta_20000):
    return partial_sums(delta_20000)
