import pytest

from braidweyl.tables import load_table


@pytest.fixture(scope="session")
def u2h():
    return load_table("u2h")


@pytest.fixture(scope="session")
def gl2h():
    return load_table("gl2h")


@pytest.fixture(scope="session")
def weyl_n():
    return load_table("weyl-N")
