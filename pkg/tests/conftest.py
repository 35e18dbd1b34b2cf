import pytest

from confhodge import fixtures


def pytest_addoption(parser):
    parser.addoption(
        "--regen-golden", action="store_true", default=False,
        help="rewrite the golden result files from current engine output",
    )


@pytest.fixture
def regen_golden(request):
    return request.config.getoption("--regen-golden")


@pytest.fixture(scope="session")
def point():
    return fixtures.build("point")


@pytest.fixture(scope="session")
def p1():
    return fixtures.build("p1")


@pytest.fixture(scope="session")
def elliptic():
    return fixtures.build("elliptic")


@pytest.fixture(scope="session")
def genus2():
    return fixtures.build("genus2")


@pytest.fixture(scope="session")
def p1xp1():
    return fixtures.build("p1xp1")


@pytest.fixture(scope="session")
def all_fixtures():
    return [fixtures.build(name) for name in fixtures.FIXTURE_NAMES]
