import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from wallkit.walls import WallsStructure

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_walls(rng, size, count, max_num=4, max_den=3):
    full = (1 << size) - 1
    walls = []
    for _ in range(count):
        m = rng.randrange(1, full) if full > 1 else 0
        walls.append((m, Fraction(rng.randint(1, max_num), rng.randint(1, max_den))))
    return WallsStructure.collect(size, walls)


@st.composite
def walls_structures(draw, min_size=2, max_size=8, max_walls=12):
    size = draw(st.integers(min_size, max_size))
    full = (1 << size) - 1
    masks = draw(st.lists(st.integers(1, full - 1), max_size=max_walls))
    weights = draw(st.lists(st.fractions(min_value=Fraction(1, 6), max_value=5, max_denominator=6),
                            min_size=len(masks), max_size=len(masks)))
    return WallsStructure(size, list(zip(masks, weights)))


@pytest.fixture
def rng():
    return random.Random(20241016)


# acceptance verdict lines, filled in by test_acceptance.py and printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
