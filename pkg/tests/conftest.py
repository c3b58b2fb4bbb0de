import pytest

from f2xf2.ball import build_ball
from f2xf2.group import S1, S2


@pytest.fixture(scope="session")
def s1_ball6():
    return build_ball(S1, 6)


@pytest.fixture(scope="session")
def s2_ball5():
    return build_ball(S2, 5)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
