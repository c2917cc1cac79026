import pytest

from sigmagroups.catalog import group_from_text
from sigmagroups.sigma import parse_sigma


@pytest.fixture(scope="session")
def grp():
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = group_from_text(text)
        return cache[text]

    return get


@pytest.fixture(scope="session")
def sig():
    return parse_sigma
