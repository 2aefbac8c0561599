import pytest

from fusioncat import build_U, build_VLtau


@pytest.fixture(scope="session")
def u_datum():
    return build_U()


@pytest.fixture(scope="session")
def vltau_datum():
    return build_VLtau()
