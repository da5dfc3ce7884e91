import pytest

from knotgauss.codes import load_fixtures, parse_code


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture
def trefoil():
    return parse_code("O1+U2+O3+U1+O2+U3+")


@pytest.fixture
def kink():
    return parse_code("O1+U1+")


_BOARD = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def scoreboard(request):
    return request.config.stash.setdefault(_BOARD, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_BOARD, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
