import pytest

from genkummer.lattice import make_standard


@pytest.fixture
def U():
    return make_standard("U")


@pytest.fixture
def A1():
    return make_standard("A1")


@pytest.fixture
def A2():
    return make_standard("A2")


_ACCEPTANCE = []


def record_criterion(line):
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
