import pytest

from detcover.polyform import parse_form
from detcover.variety import make_variety, projective_space


@pytest.fixture
def conic():
    return make_variety([parse_form("x0^2 + x1^2 - x2^2", 3)], 2)


@pytest.fixture
def fermat_cubic():
    return make_variety([parse_form("x0^3 + x1^3 - x2^3", 3)], 2)


@pytest.fixture
def cusp():
    return make_variety([parse_form("x1^2*x2 - x0^3", 3)], 2)


@pytest.fixture
def line():
    return projective_space(1)
