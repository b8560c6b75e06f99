from fractions import Fraction

import pytest

from oreext.coeff import GaussianRational

Q = GaussianRational(Fraction(3, 5), Fraction(4, 5))
Q2 = GaussianRational(Fraction(5, 13), Fraction(12, 13))


@pytest.fixture
def q():
    return Q


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
