"""Section spaces F_D, evaluation matrices, p-adic divisibility of their
minors, and the auxiliary hypersurface through a set of points.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactla import IntMatrix, determinant, kernel_basis, p_valuation
from .heights import ProjectivePoint
from .polyform import Exponent, Form, divides, form_from_coefficients, monomials
from .residue import Q_value, canonical_class_coords
from .variety import AMBIENT, HYPERSURFACE, PointNotOnVariety, Variety, VarietyError, is_regular_mod_p

MAX_MINORS = 200


class CertificationError(ValueError):
    pass


def r1_hypersurface(M: int, d: int, D: int) -> int:
    """Hilbert function of a degree-d hypersurface of P^M in degree D."""
    full = math.comb(D + M, M)
    if D < d:
        return full
    return full - math.comb(D - d + M, M)


def sombra_lower_bound(d: int, n: int, D: int) -> Fraction:
    """d (D-d+2)^n / n!, valid for D > d-2."""
    return Fraction(d * (D - d + 2) ** n, math.factorial(n))


def chardin_upper_bound(d: int, n: int, D: int) -> int:
    return d * math.comb(D + n, n)


@dataclass(frozen=True)
class SectionBasis:
    variety: Variety
    D: int
    monomials: tuple[Exponent, ...]

    @property
    def r1(self) -> int:
        return len(self.monomials)

    def bounds(self) -> dict:
        X = self.variety
        out = {"chardin_upper": chardin_upper_bound(X.degree, X.dim, self.D)}
        if self.D > X.degree - 2:
            out["sombra_lower"] = sombra_lower_bound(X.degree, X.dim, self.D)
        return out


def fd_basis(X: Variety, D: int) -> SectionBasis:
    """Degree-D monomials not divisible by LM(f): a basis of F_{D,Q} for X = V(f)."""
    if D < 0:
        raise ValueError("degree must be non-negative")
    mons = monomials(X.num_vars, D)
    if X.kind == AMBIENT:
        return SectionBasis(X, D, tuple(mons))
    if X.kind != HYPERSURFACE:
        raise VarietyError("section bases are only available for hypersurfaces")
    lm = X.generators[0].leading_monomial()
    return SectionBasis(X, D, tuple(m for m in mons if not divides(lm, m)))


def _monomial_value(exp: Exponent, coords: Sequence[int]) -> int:
    v = 1
    for x, k in zip(coords, exp):
        if k:
            v *= x ** k
    return v


def evaluation_matrix(basis: SectionBasis, points: Sequence[ProjectivePoint | Sequence[int]]) -> IntMatrix:
    """Entry (j, i) is the j-th basis monomial at the i-th point: r1 rows, one column per point."""
    X = basis.variety
    cols = []
    for P in points:
        c = tuple(P)
        if len(c) != X.num_vars:
            raise VarietyError(f"point {c} has the wrong number of coordinates")
        if not X.contains_point(c):
            raise PointNotOnVariety(f"point {c} does not lie on X")
        cols.append(c)
    rows = [[_monomial_value(m, c) for c in cols] for m in basis.monomials]
    return IntMatrix(len(rows), len(cols), tuple(tuple(r) for r in rows))


def min_degree_for_rank(X: Variety, mu: int, cap: int = 10_000) -> int:
    """Smallest D >= 1 whose section space has rank at least mu."""
    for D in range(1, cap):
        if len(fd_basis(X, D).monomials) >= mu:
            return D
    raise ValueError(f"no degree below {cap} reaches rank {mu}")


@dataclass(frozen=True)
class MinorRecord:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    det: int
    valuation: float | int
    passed: bool

    def to_json(self) -> dict:
        v = self.valuation
        return {"rows": list(self.rows), "cols": list(self.cols), "det": str(self.det),
                "valuation": "inf" if v == math.inf else v, "passed": self.passed}


@dataclass
class CertReport:
    p: int
    a: int
    n: int
    mu: int
    D: int
    r1: int
    Q: int
    bound: int
    class_coords: tuple[int, ...] | None
    common_class: bool
    exhaustive: bool
    minors: list[MinorRecord] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(not m.passed for m in self.minors)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def min_valuation(self):
        return min((m.valuation for m in self.minors), default=math.inf)

    def to_json(self) -> dict:
        mv = self.min_valuation
        return {
            "p": self.p, "a": self.a, "n": self.n, "mu": self.mu, "D": self.D, "r1": self.r1,
            "Q": self.Q, "bound": self.bound,
            "class": list(self.class_coords) if self.class_coords else None,
            "common_class": self.common_class,
            "exhaustive": self.exhaustive,
            "minors_checked": len(self.minors),
            "failures": self.failures,
            "min_valuation": "inf" if mv == math.inf else mv,
            "passed": self.passed,
            "minors": [m.to_json() for m in self.minors],
        }


def _minor_index_sets(r1: int, npts: int, mu: int, seed: int, limit: int):
    total = math.comb(r1, mu) * math.comb(npts, mu)
    if total <= limit:
        pairs = itertools.product(itertools.combinations(range(r1), mu),
                                  itertools.combinations(range(npts), mu))
        return list(pairs), True
    rng = random.Random(seed)
    chosen = set()
    out = []
    attempts = 0
    while len(out) < limit and attempts < 50 * limit:
        attempts += 1
        rows = tuple(sorted(rng.sample(range(r1), mu)))
        cols = tuple(sorted(rng.sample(range(npts), mu)))
        if (rows, cols) not in chosen:
            chosen.add((rows, cols))
            out.append((rows, cols))
    return out, False


def certify_padic_divisibility(X: Variety, p: int, a: int, points: Sequence, mu: int,
                               degree: int | None = None, seed: int = 0,
                               max_minors: int = MAX_MINORS, strict: bool = True) -> CertReport:
    """Check v_p(det) >= a * Q(mu) on mu x mu minors of the evaluation matrix.

    The points must share one regular class mod p^a.  With strict=False the
    class check is skipped and the same bound is tested anyway, which is how
    negative controls (points from distinct classes) are run.  Minors are
    enumerated exhaustively when there are at most max_minors of them,
    otherwise max_minors distinct minors are drawn with a fixed seed.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    pts = [tuple(P) for P in points]
    if mu > len(pts):
        raise ValueError(f"mu = {mu} exceeds the number of points {len(pts)}")
    if X.dim < 1:
        raise VarietyError("X must have positive dimension")
    classes = {canonical_class_coords(c, p, a) for c in pts}
    common = len(classes) == 1
    class_coords = next(iter(classes)) if common else None
    if strict:
        if not common:
            raise CertificationError("points do not reduce to a common class mod p^a")
        if not is_regular_mod_p(X, class_coords, p):
            raise CertificationError(f"class {class_coords} is singular mod {p}")
    D = degree if degree is not None else min_degree_for_rank(X, mu)
    basis = fd_basis(X, D)
    if basis.r1 < mu:
        raise ValueError(f"r1({D}) = {basis.r1} < mu = {mu}")
    A = evaluation_matrix(basis, pts)
    Q = Q_value(X.dim, mu)
    bound = a * Q
    index_sets, exhaustive = _minor_index_sets(basis.r1, len(pts), mu, seed, max_minors)
    records = []
    for rows, cols in index_sets:
        det = determinant(A.submatrix(rows, cols))
        v = p_valuation(det, p)
        records.append(MinorRecord(rows, cols, det, v, v >= bound))
    return CertReport(p, a, X.dim, mu, D, basis.r1, Q, bound, class_coords, common,
                      exhaustive, records)


def find_hypersurface(X: Variety, D: int, points: Sequence) -> Form | None:
    """A nonzero degree-D form through all points and not vanishing on X, or None.

    The form is supported on the F_D basis, so it is never in the ideal of X.
    None is returned exactly when the (points x basis) matrix has full column
    rank.
    """
    basis = fd_basis(X, D)
    A = evaluation_matrix(basis, points).transpose()
    kernel = kernel_basis(A)
    if not kernel:
        return None
    return form_from_coefficients(basis.monomials, kernel[0], X.num_vars, D).primitive()
