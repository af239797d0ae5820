"""Residue classes of X(Z/p^a) and the Hilbert-Samuel data of regular classes.

A class is stored by its canonical representative: the first coordinate that
is a unit mod p is scaled to 1, so the coordinates before it are divisible
by p.  The regular flag records smoothness of the mod-p fiber at the
reduction xi (Jacobian rank mod p).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .heights import ProjectivePoint
from .polyform import reduce_form
from .variety import Variety, is_regular_mod_p


@dataclass(frozen=True, order=True)
class ResidueClass:
    p: int
    a: int
    coords: tuple[int, ...]
    regular: bool

    @property
    def modulus(self) -> int:
        return self.p ** self.a

    def reduction(self) -> tuple[int, ...]:
        """The class of xi mod p (same canonical normalization)."""
        return tuple(x % self.p for x in self.coords)

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "regular": self.regular}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


def _check_prime(p: int, a: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a < 1:
        raise ValueError("exponent a must be positive")


def canonical_class_coords(coords: Sequence[int], p: int, a: int) -> tuple[int, ...]:
    m = p ** a
    c = [x % m for x in coords]
    lead = next((x for x in c if x % p), None)
    if lead is None:
        raise ValueError(f"{tuple(coords)} has no unit coordinate mod {p}")
    inv = pow(lead, -1, m)
    return tuple(x * inv % m for x in c)


def reduce_point(X: Variety, P: ProjectivePoint | Sequence[int], p: int, a: int = 1) -> ResidueClass:
    """The class eta of P in X(Z/p^a), flagged by regularity of its reduction mod p."""
    _check_prime(p, a)
    coords = canonical_class_coords(tuple(P), p, a)
    return ResidueClass(p, a, coords, is_regular_mod_p(X, coords, p))


def has_good_reduction(X: Variety, p: int) -> bool:
    return all(not reduce_form(g, p, 1).is_zero() for g in X.generators)


def gl02_bound(X: Variety, p: int, a: int = 1) -> int:
    """d * sum_{k=0}^{n} (p^a)^k, the point-count bound applied to X(Z/p^a)."""
    q = p ** a
    return X.degree * sum(q ** k for k in range(X.dim + 1))


def _classes_mod_p(X: Variety, p: int, gens) -> list[tuple[int, tuple[int, ...]]]:
    out = []
    N = X.num_vars
    for i in range(N):
        for tail in itertools.product(range(p), repeat=N - i - 1):
            coords = (0,) * i + (1,) + tail
            if all(g.evaluate(coords) == 0 for g in gens):
                out.append((i, coords))
    return out


def residue_classes(X: Variety, p: int, a: int = 1) -> list[ResidueClass]:
    """Every class of X(Z/p^a), sorted by canonical coordinates.

    Brute force over canonical representatives, organized as lifts of the
    classes mod p (a representative mod p^a reduces to one mod p with the same
    leading unit position).
    """
    _check_prime(p, a)
    if not has_good_reduction(X, p):
        warnings.warn(f"X has bad reduction at {p}: a generator vanishes mod {p}", stacklevel=2)
    gens_p = [reduce_form(g, p, 1) for g in X.generators]
    gens_pa = [reduce_form(g, p, a) for g in X.generators]
    m = p ** a
    lift_range = range(p ** (a - 1))
    out = []
    N = X.num_vars
    for i, xi in _classes_mod_p(X, p, gens_p):
        regular = is_regular_mod_p(X, xi, p)
        if a == 1:
            out.append(ResidueClass(p, a, xi, regular))
            continue
        free = [j for j in range(N) if j != i]
        for t in itertools.product(lift_range, repeat=len(free)):
            coords = list(xi)
            for j, tj in zip(free, t):
                coords[j] = (coords[j] + p * tj) % m
            coords = tuple(coords)
            if all(g.evaluate(coords) == 0 for g in gens_pa):
                out.append(ResidueClass(p, a, coords, regular))
    out.sort()
    return out


def class_report(X: Variety, p: int, a: int = 1) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        classes = residue_classes(X, p, a)
    good = has_good_reduction(X, p)
    bound = gl02_bound(X, p, a)
    return {
        "p": p,
        "a": a,
        "good_reduction": good,
        "count": len(classes),
        "regular_count": sum(c.regular for c in classes),
        "gl02_bound": bound,
        "gl02_holds": (len(classes) <= bound) if good else None,
        # a theorem only over the field F_p; for a >= 2 the comparison is informational
        "gl02_applies": good and a == 1,
        "classes": [c.to_json() for c in classes],
    }


# Hilbert-Samuel function of a regular local ring of dimension n


def hs_function(n: int, k: int) -> int:
    """binom(k+n-1, n-1): rank of m^k/m^{k+1} for a regular n-dimensional local ring."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if k < 0:
        raise ValueError("k must be non-negative")
    return math.comb(k + n - 1, n - 1)


def q_value(n: int, m: int) -> int:
    """m-th entry of the sequence in which each k >= 0 repeats hs_function(n, k) times."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 1:
        raise ValueError("dimension must be at least 1")
    k = 0
    # binom(k+n, n) entries have value <= k
    while math.comb(k + n, n) < m:
        k += 1
    return k


def Q_value(n: int, m: int) -> int:
    """q_value(n, 1) + ... + q_value(n, m)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if n < 1:
        raise ValueError("dimension must be at least 1")
    total, seen, k = 0, 0, 0
    while seen < m:
        take = min(hs_function(n, k), m - seen)
        total += take * k
        seen += take
        k += 1
    return total


def chen_q_lower_bound(n: int, mu: int, D: int = 1) -> float:
    """(n!)^{1/n} n/(n+1) mu^{1/n}/D - (n+3)/(2n+2) * n/D."""
    return (math.factorial(n) ** (1 / n) * n / (n + 1) * mu ** (1 / n) / D
            - (n + 3) / (2 * n + 2) * n / D)


def chen_q_bound_holds(n: int, mu: int, D: int = 1) -> bool:
    """Exact check of Q(mu)/(D mu) >= chen_q_lower_bound(n, mu, D).

    Multiplying through by D and moving the rational part left gives
    L >= (n!)^{1/n} n/(n+1) mu^{1/n}; both sides are compared after raising
    to the n-th power.
    """
    if D < 1:
        raise ValueError("D must be positive")
    L = Fraction(Q_value(n, mu), mu) + Fraction(n * (n + 3), 2 * n + 2)
    if L < 0:
        return False
    return L ** n >= math.factorial(n) * Fraction(n, n + 1) ** n * mu
