from __future__ import annotations

import random

import pytest

from wegner7 import generators as gen
from wegner7.graph import PlanarGraph, from_rotation


def cycle_rotation(n: int) -> PlanarGraph:
    return from_rotation([[(v - 1) % n, (v + 1) % n] for v in range(n)])


@pytest.fixture(scope="session")
def small_corpus():
    """Thirty 3-connected cubic plane graphs, n in 8..16."""
    return gen.corpus([8, 10, 12, 14, 16], 30, seed=11)


@pytest.fixture
def rng():
    return random.Random(1234)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
