import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from spectradiag.core.lambda_sets import beta_sequence
from spectradiag.core.numerics import INFINITE
from spectradiag.core.sequences import DiagonalSequence, GeometricTail
from spectradiag.core.spectrum import SpectrumSpec

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

INF = "inf"


def spectrum(*pairs) -> SpectrumSpec:
    """SpectrumSpec из пар (значение, кратность), кратность 'inf' означает бесконечность."""
    return SpectrumSpec((F(value), INFINITE if count == INF else count) for value, count in pairs)


def geometric_half() -> DiagonalSequence:
    """Значения 1/4, 1/8, ... и 3/4, 7/8, ..."""
    return DiagonalSequence(tails=[GeometricTail(0, F(1, 2), F(1, 2)), GeometricTail(1, F(-1, 2), F(1, 2))],
                            bounds=(F(0), F(1)))


def random_class_f(rng: random.Random, max_atoms: int = 4) -> DiagonalSequence:
    """Случайная последовательность класса F в [0, 1] с хвостами к 0 и к 1."""
    ratios = [F(1, 2), F(1, 3), F(2, 5), F(3, 4)]
    tails = [
        GeometricTail(0, F(rng.randint(1, 8), 8), rng.choice(ratios)),
        GeometricTail(1, -F(rng.randint(1, 8), 8), rng.choice(ratios)),
    ]
    atoms = [(F(rng.randint(0, 20), 20), rng.randint(1, 2)) for _ in range(rng.randint(0, max_atoms))]
    return DiagonalSequence(atoms=atoms, tails=tails, bounds=(F(0), F(1)))


@pytest.fixture
def rng():
    return random.Random(20240517)


@pytest.fixture
def beta_quarter():
    return beta_sequence(F(1, 4))


@pytest.fixture
def geometric():
    return geometric_half()


@pytest.fixture
def interior_spec():
    return spectrum((0, INF), (F(1, 2), 2), (1, INF))


@pytest.fixture
def parity_spec():
    return spectrum((0, INF), (F(1, 2), 1), (1, INF))


@pytest.fixture
def projection_spec():
    return spectrum((0, INF), (1, INF))


@pytest.fixture
def data_dir():
    return DATA_DIR
