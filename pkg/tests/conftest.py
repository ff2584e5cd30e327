import pytest

from squareprime import build_table


@pytest.fixture(scope="session")
def table6():
    return build_table(10**6)
