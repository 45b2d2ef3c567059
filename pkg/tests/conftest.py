import pytest
from hypothesis import settings

from pairops import build_algebra
from pairops.cores import enumerate_ideals

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def chain4():
    A = build_algebra("artinian p=2 vars=x trunc=4")
    return A, enumerate_ideals(A)


@pytest.fixture(scope="session")
def t23():
    A = build_algebra("semigroup p=2 gens=2,3 trunc=8")
    return A, enumerate_ideals(A)
