import pytest

from spirs.gf import GF
from spirs.irs.codec import code_new

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one line per acceptance criterion for the terminal summary."""
    return request.config.stash[_LINES_KEY]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(ln)


@pytest.fixture(scope="session")
def gf7():
    return GF(7)


@pytest.fixture(scope="session")
def gf8():
    return GF("b:3:0xb")


@pytest.fixture(scope="session")
def gf16():
    return GF("b:4:0x13")


@pytest.fixture(scope="session")
def code8(gf8):
    """GF(8), n=7, L=2, k=(3,3) with beta = 0..6 (not cyclic, contains 0)."""
    return code_new(gf8, 7, 2, (3, 3))


@pytest.fixture(scope="session")
def code8_cyclic(gf8):
    return code_new(gf8, 7, 2, (3, 3), "powers")
