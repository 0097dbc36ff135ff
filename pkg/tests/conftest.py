import random

import pytest
from hypothesis import settings

from helly import GF, QQ, Matrix

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def random_matrix(rng, field, rows, cols=None, lo=-3, hi=3):
    cols = rows if cols is None else cols
    if field.order is not None:
        return Matrix(field, [[rng.randrange(field.order) for _ in range(cols)] for _ in range(rows)])
    return Matrix(field, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
