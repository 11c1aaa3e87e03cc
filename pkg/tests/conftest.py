import pytest

from charforge.characters import character_table
from charforge.fixtures import all_fixture_groups


@pytest.fixture(scope="session")
def groups():
    return all_fixture_groups()


@pytest.fixture(scope="session")
def tables(groups):
    return {name: character_table(g, seed=42) for name, g in groups.items()}
