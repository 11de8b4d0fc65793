import pytest

import qcss


@pytest.fixture(scope="session")
def family3():
    return qcss.build_family_a(3)


@pytest.fixture(scope="session")
def family4():
    return qcss.build_family_a(4)


@pytest.fixture(scope="session")
def family5():
    return qcss.build_family_a(5)


@pytest.fixture(scope="session")
def family6():
    return qcss.build_family_a(6)
