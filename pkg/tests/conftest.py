import random

import numpy as np
import pytest


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def nprng():
    return np.random.default_rng(12345)


def random_unit(nprng, d, count):
    vecs = nprng.standard_normal((count, d))
    return vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
