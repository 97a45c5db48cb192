import random
from fractions import Fraction

import numpy as np
import pytest

from nilmetric.exact import qarray


def rand_q(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_vec(rng: random.Random, n: int) -> np.ndarray:
    return qarray([rand_q(rng) for _ in range(n)])


def rand_mat(rng: random.Random, n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return qarray([[rand_q(rng) for _ in range(m)] for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(12345)
