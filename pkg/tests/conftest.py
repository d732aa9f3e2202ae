import numpy as np
import pytest

from src.braids import FixtureStore
from src.config_manager import load_config
from src.patterns import Bar, Compose, ConnSum, Dual, Gen, Twist


@pytest.fixture(scope='session')
def config():
    return load_config()


@pytest.fixture(scope='session')
def store(config):
    return FixtureStore(config)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_pattern(rng, depth=4):
    ''' Random expression over J and connected-sum leaves (every generator has a declared dual). '''
    if depth == 0 or rng.random() < 0.2:
        choice = int(rng.integers(3))
        if choice == 0:
            return Gen('J')
        return ConnSum('K', mirrored=bool(choice == 2))
    node = int(rng.integers(4))
    if node == 0:
        return Twist(int(rng.integers(-5, 6)), random_pattern(rng, depth - 1))
    if node == 1:
        return Bar(random_pattern(rng, depth - 1))
    if node == 2:
        return Dual(random_pattern(rng, depth - 1))
    return Compose(random_pattern(rng, depth - 1), random_pattern(rng, depth - 1))


def random_unimodular(rng, k, steps=12):
    ''' Product of random elementary integer row operations. '''
    P = np.array([[int(i == j) for j in range(k)] for i in range(k)], dtype=object)
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(k, size=2, replace=False))
        P[i, :] += int(rng.integers(-2, 3)) * P[j, :]
    return P


@pytest.fixture
def patterns(rng):
    return lambda count, depth=4: [random_pattern(rng, depth) for _ in range(count)]
