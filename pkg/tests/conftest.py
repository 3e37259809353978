import random

import pytest

from bidiff.poly import MPoly, VarSpace
from bidiff.parsing import parse_poly


@pytest.fixture
def rng():
    return random.Random(20240811)


def p(text: str, space: VarSpace) -> MPoly:
    return parse_poly(text, space)


@pytest.fixture
def pair_space():
    return VarSpace(("xi", 1), ("zeta", 1))


@pytest.fixture
def doubled_1d():
    return VarSpace(("x", 1)).doubled()
