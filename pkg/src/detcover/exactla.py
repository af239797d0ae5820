"""Dense exact linear algebra over Z and Q.

Everything is fraction-free: determinants and echelon forms use Bareiss
elimination so intermediate entries stay integral and bounded by minors of
the input.  Pivoting is deterministic (first nonzero entry, row order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not entries:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged rows")
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(rows), len(cols),
                         tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * x for a, x in zip(row, v)) for row in self.entries]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return [list(r) for r in A.entries]
    return [list(map(int, r)) for r in A]


def determinant(A) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = _as_rows(A)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def _echelon(m: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan (Bareiss) in place.

    Returns the reduced rows and pivot columns.  Every pivot row ends with the
    common pivot value in its pivot column and zeros in the other pivot columns.
    """
    rows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        pk = m[r][c]
        rk = m[r]
        for i in range(rows):
            if i == r:
                continue
            ri = m[i]
            a = ri[c]
            for j in range(cols):
                v = pk * ri[j] - a * rk[j]
                q, rem = divmod(v, prev)
                assert rem == 0, "non-exact Bareiss division"
                ri[j] = q
        prev = pk
        pivots.append(c)
        r += 1
    return m, pivots


def rank(A) -> int:
    m = _as_rows(A)
    if not m:
        return 0
    _, pivots = _echelon(m, len(m[0]))
    return len(pivots)


def primitive_vector(v: Sequence) -> list[int]:
    """Scale a nonzero rational vector to coprime integers, first nonzero positive."""
    fr = [Fraction(x) for x in v]
    den = reduce(math.lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(math.gcd, ints)
    if g == 0:
        raise ValueError("zero vector")
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [x // g for x in ints]


def kernel_basis(A) -> list[list[int]]:
    """Basis of the right kernel over Q as primitive integer vectors.

    One vector per free column, in column order; empty iff A has full column
    rank.
    """
    if isinstance(A, IntMatrix):
        cols = A.cols
    else:
        cols = len(A[0]) if len(A) else 0
    m = _as_rows(A)
    if not m:
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    red, pivots = _echelon(m, cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * cols
        if pivots:
            d = red[len(pivots) - 1][pivots[-1]]
            v[f] = d
            for r, pc in enumerate(pivots):
                v[pc] = -red[r][f]
        else:
            v[f] = 1
        basis.append(primitive_vector(v))
    return basis


def rank_mod_p(A, p: int) -> int:
    m = [[x % p for x in r] for r in _as_rows(A)]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                a = m[i][c]
                m[i] = [(x - a * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def p_valuation(x: int, p: int) -> float | int:
    """Largest e with p^e | x; math.inf for x = 0."""
    if p < 2:
        raise ValueError("p must be a prime")
    if x == 0:
        return math.inf
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e
