import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from detcover.heights import ProjectivePoint, canonicalize, height, height_le, height_squared
from oracles import arakelov_height_log


def test_height_of_pythagorean_point():
    P = canonicalize([3, 4, 5])
    assert height_squared(P) == 50
    assert height(P).value == pytest.approx(math.sqrt(50), rel=1e-12)


def test_canonicalize_clears_denominators_and_sign():
    assert canonicalize([Fraction(-1, 2), Fraction(1, 3), 0]).coords == (3, -2, 0)
    assert canonicalize([0, -6, 4]).coords == (0, 3, -2)


def test_canonicalize_rejects_zero():
    with pytest.raises(ValueError):
        canonicalize([0, 0, 0])


def test_point_validates():
    with pytest.raises(ValueError):
        ProjectivePoint((2, 4))
    with pytest.raises(ValueError):
        ProjectivePoint((-1, 2))


def test_height_le_is_exact():
    P = canonicalize([3, 4, 0])
    assert height_le(P, 5)
    assert not height_le(P, Fraction(499, 100))
    assert not height_le(P, 4.99)
    Q = canonicalize([1, 1])
    assert height_le(Q, Fraction(1415, 1000))
    assert not height_le(Q, Fraction(1414, 1000))


def test_matches_arakelov_degree():
    rng = random.Random(3)
    for _ in range(100):
        M = rng.randint(1, 4)
        raw = [rng.randint(-1000, 1000) for _ in range(M + 1)]
        if not any(raw):
            continue
        P = canonicalize(raw)
        assert height(P).log == pytest.approx(arakelov_height_log(P.coords), abs=1e-12)


vectors = st.lists(st.integers(-10**4, 10**4), min_size=2, max_size=5).filter(any)


@settings(max_examples=200, deadline=None)
@given(vectors, st.integers(-50, 50).filter(bool))
def test_scaling_invariance(v, lam):
    assert canonicalize(v) == canonicalize([lam * x for x in v])
    assert height(canonicalize(v)).squared == height(canonicalize([lam * x for x in v])).squared


@settings(max_examples=200, deadline=None)
@given(vectors)
def test_height_at_least_one(v):
    assert height(canonicalize(v)).value >= 1


@settings(max_examples=200, deadline=None)
@given(vectors, vectors)
def test_segre_product_formula(u, w):
    # H of the Segre image is the product of the heights
    P, Q = canonicalize(u), canonicalize(w)
    prod = canonicalize([x * y for x in P.coords for y in Q.coords])
    assert height_squared(prod) == height_squared(P) * height_squared(Q)
