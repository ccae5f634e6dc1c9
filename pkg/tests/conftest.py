import pytest

from fftower.fields import make_field
from fftower.gammasearch import find_gamma
from fftower.rikuna import build_rikuna
from fftower.tower import build_tower


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F25():
    return make_field(5, 2)


@pytest.fixture(scope="session")
def sys53():
    return build_rikuna(5, 3)


@pytest.fixture(scope="session")
def sys195():
    return build_rikuna(19, 5)


@pytest.fixture(scope="session")
def sys137():
    return build_rikuna(13, 7)


@pytest.fixture(scope="session")
def tower5321(sys53):
    return build_tower(5, 3, 2, 1, sys=sys53, gamma_cert=find_gamma(sys53, 2))
