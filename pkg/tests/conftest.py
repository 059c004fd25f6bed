import numpy as np
import pytest

from helpers import space


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def pair_q4():
    """M = {a, b} com d(a,b) = 2/4"""
    return space('ab', 4, [[0, 2], [2, 0]])


@pytest.fixture
def path4():
    """Caminho a-b-c-e com arestas 1/4"""
    return space('abce', 4, [[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]])


@pytest.fixture
def scalene():
    return space('abc', 4, [[0, 1, 3], [1, 0, 2], [3, 2, 0]])
