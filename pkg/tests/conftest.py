import functools

import pytest

from gor4.constructions import families as F


@functools.lru_cache(maxsize=None)
def instance(name: str, seed: int = 1):
    return F.build_family(name, seed=seed)


@pytest.fixture(scope="session")
def build():
    return instance
