"""Exhaustive enumeration of S(X, B) and S_1(X, B)."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import reduce

from .heights import ProjectivePoint, as_fraction
from .variety import Variety, is_regular_point

DEFAULT_WORK_LIMIT = 10**9


class BudgetError(RuntimeError):
    pass


def _int_terms(X: Variety) -> list[list[tuple[int, tuple[int, ...]]]]:
    return [[(int(c), e) for e, c in g.terms] for g in X.generators]


def _vanishes(gens, coords) -> bool:
    for terms in gens:
        total = 0
        for c, e in terms:
            v = c
            for x, k in zip(coords, e):
                if k:
                    v *= x ** k
            total += v
        if total:
            return False
    return True


def _search_chart(gens, num_vars: int, lead_index: int, lead: int, bound_sq: Fraction):
    """Canonical points whose first nonzero coordinate is coords[lead_index] = lead."""
    found = []
    prefix = [0] * lead_index + [lead]

    def rec(coords, remaining):
        if len(coords) == num_vars:
            if reduce(math.gcd, coords) == 1 and _vanishes(gens, coords):
                found.append(tuple(coords))
            return
        r = math.isqrt(math.floor(remaining))
        for x in range(-r, r + 1):
            coords.append(x)
            rec(coords, remaining - x * x)
            coords.pop()

    remaining = bound_sq - lead * lead
    if remaining < 0:
        return found
    rec(prefix, remaining)
    return found


def _chart_task(args):
    return _search_chart(*args)


def enumerate_points(X: Variety, B, work_limit: int = DEFAULT_WORK_LIMIT,
                     workers: int = 1) -> list[ProjectivePoint]:
    """All points of X(Q) with H(P) <= B, sorted lexicographically by canonical coordinates.

    Complete by box search over |x_i| <= B, pruned on partial sums of squares.
    The search space is split by the position and value of the leading
    coordinate; with workers > 1 the pieces run in separate processes.
    """
    b = as_fraction(B)
    if b < 1:
        raise ValueError("height bound must be at least 1")
    side = 2 * math.floor(b) + 1
    if side ** X.num_vars > work_limit:
        raise BudgetError(f"{side}^{X.num_vars} candidate tuples exceed the work limit {work_limit}")
    bound_sq = b * b
    gens = _int_terms(X)
    tasks = [(gens, X.num_vars, i, lead, bound_sq)
             for i in range(X.num_vars)
             for lead in range(1, math.isqrt(math.floor(bound_sq)) + 1)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_chart_task, tasks))
    else:
        chunks = [_chart_task(t) for t in tasks]
    pts = sorted(c for chunk in chunks for c in chunk)
    return [ProjectivePoint(c) for c in pts]


def regular_points(X: Variety, B, work_limit: int = DEFAULT_WORK_LIMIT,
                   workers: int = 1) -> list[ProjectivePoint]:
    return [P for P in enumerate_points(X, B, work_limit, workers) if is_regular_point(X, P)]
