"""Rational points of P^M and their Fubini-Study height over Q."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """Primitive integer coordinates with positive first nonzero entry."""

    coords: tuple[int, ...]

    def __post_init__(self):
        c = self.coords
        if not any(c):
            raise ValueError("the zero vector is not a projective point")
        if reduce(math.gcd, c) != 1:
            raise ValueError(f"coordinates {c} are not primitive")
        if next(x for x in c if x) < 0:
            raise ValueError(f"coordinates {c} are not sign-normalized")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        return "(" + ":".join(map(str, self.coords)) + ")"


def canonicalize(raw: Sequence) -> ProjectivePoint:
    """Clear denominators, divide by the gcd and make the first nonzero entry positive."""
    fr = [Fraction(x) for x in raw]
    if not any(fr):
        raise ValueError("the zero vector is not a projective point")
    den = reduce(math.lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(math.gcd, ints)
    if next(x for x in ints if x) < 0:
        g = -g
    return ProjectivePoint(tuple(x // g for x in ints))


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float (read by its repr)."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def height_squared(P: ProjectivePoint) -> int:
    return sum(x * x for x in P.coords)


@dataclass(frozen=True)
class Height:
    squared: int

    @property
    def value(self) -> float:
        return math.sqrt(self.squared)

    @property
    def log(self) -> float:
        """Logarithmic height h(P) = 1/2 log of the squared height."""
        return 0.5 * math.log(self.squared)


def height(P: ProjectivePoint) -> Height:
    """H(P) = sqrt(sum x_i^2) for primitive integer coordinates (K = Q)."""
    return Height(height_squared(P))


def height_le(P: ProjectivePoint, bound) -> bool:
    """Exact test H(P) <= bound, with the boundary included."""
    b = as_fraction(bound)
    if b <= 0:
        raise ValueError("height bound must be positive")
    return height_squared(P) <= b * b
