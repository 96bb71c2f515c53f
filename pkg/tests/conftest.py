import random
from fractions import Fraction

import pytest

from mvkrawtchouk.krawtchouk import ParameterMatrix

SMALL_VALUES = [Fraction(v) for v in range(-2, 3)] + [
    Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 3)
]


def random_matrix(rng, n, values=SMALL_VALUES):
    inner = [[rng.choice(values) for _ in range(n - 1)] for _ in range(n - 1)]
    return ParameterMatrix.from_inner(inner)


@pytest.fixture
def rng():
    return random.Random(20260415)


@pytest.fixture
def hadamard():
    return ParameterMatrix([[1, 1], [1, -1]])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
