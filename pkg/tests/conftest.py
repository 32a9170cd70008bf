from __future__ import annotations

import functools
import random

import pytest

from onepmatch.acceptance import all_fixtures, k4_crossed, random_planar_triangulation
from onepmatch.generators import family
from onepmatch.saturation import triangulate


@functools.lru_cache(maxsize=None)
def fam(tag: str, s: int = 8):
    return family(tag, s)


@functools.lru_cache(maxsize=None)
def fixture_list():
    return tuple(all_fixtures(0))


@pytest.fixture
def k4x():
    return k4_crossed()


@pytest.fixture
def k4x_tri():
    return triangulate(k4_crossed())


@pytest.fixture
def rng():
    return random.Random(12345)


def planar(n: int, seed: int = 0):
    return random_planar_triangulation(n, random.Random(seed))
