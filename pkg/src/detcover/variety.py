"""Projective varieties X in P^M over Q given by integral primitive forms."""

from __future__ import annotations

import json
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exactla import rank, rank_mod_p
from .heights import ProjectivePoint
from .polyform import Form, FormError, divide, eval_form, parse_form

HYPERSURFACE = "hypersurface"
COMPLETE_INTERSECTION = "complete-intersection"
AMBIENT = "projective-space"
KINDS = (HYPERSURFACE, COMPLETE_INTERSECTION, AMBIENT)


class VarietyError(ValueError):
    pass


class PointNotOnVariety(VarietyError):
    pass


class UndecidableError(VarietyError):
    """Raised where a question cannot be decided at desk scale (not the same as False)."""


@dataclass(frozen=True)
class Variety:
    ambient_dim: int
    generators: tuple[Form, ...]
    dim: int
    degree: int
    kind: str

    @property
    def num_vars(self) -> int:
        return self.ambient_dim + 1

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def contains_point(self, P: Sequence[int]) -> bool:
        return all(eval_form(g, tuple(P)) == 0 for g in self.generators)

    def summary(self) -> dict:
        return {
            "M": self.ambient_dim,
            "n": self.dim,
            "d": self.degree,
            "kind": self.kind,
            "generators": [str(g) for g in self.generators],
        }

    def to_json(self) -> dict:
        return {"M": self.ambient_dim, "kind": self.kind,
                "generators": [str(g) for g in self.generators]}


def make_variety(generators: Sequence[Form | str], M: int, kind: str = HYPERSURFACE) -> Variety:
    """Validate generators and compute (n, d) according to kind.

    Generators are normalized to primitive integer coefficients.  For
    hypersurfaces, irreducibility is the caller's assertion; only a trial
    square-freeness check is made and a warning issued when it fails.
    """
    if kind not in KINDS:
        raise VarietyError(f"unknown kind {kind!r}")
    if kind == AMBIENT:
        if generators:
            raise VarietyError("projective space takes no generators")
        return projective_space(M)
    if M < 1:
        raise VarietyError("ambient dimension must be positive")
    if not generators:
        raise VarietyError("empty generator list")
    gens = []
    for g in generators:
        if isinstance(g, str):
            g = parse_form(g, M + 1)
        if g.num_vars != M + 1:
            raise VarietyError(f"generator in {g.num_vars} variables, expected {M + 1}")
        if g.is_zero():
            raise VarietyError("zero generator")
        if g.degree < 1:
            raise VarietyError("constant generator defines the empty set")
        gens.append(g.primitive())
    if kind == HYPERSURFACE:
        if len(gens) != 1:
            raise VarietyError(f"hypersurface needs exactly one generator, got {len(gens)}")
        if not _trial_squarefree(gens[0]):
            warnings.warn(f"generator {gens[0]} looks non-squarefree; "
                          "irreducibility is assumed, not checked", stacklevel=2)
        n, d = M - 1, gens[0].degree
    else:
        if len(gens) > M:
            raise VarietyError("more generators than the ambient dimension")
        n, d = M - len(gens), math.prod(g.degree for g in gens)
    return Variety(M, tuple(gens), n, d, kind)


def projective_space(M: int) -> Variety:
    """X = P^M itself: no generators, n = M, d = 1."""
    if M < 1:
        raise VarietyError("ambient dimension must be positive")
    return Variety(M, (), M, 1, AMBIENT)


def load_variety(path: str | Path) -> Variety:
    with open(path) as fh:
        return variety_from_json(json.load(fh))


def variety_from_json(data: dict) -> Variety:
    try:
        M = int(data["M"])
    except (KeyError, TypeError, ValueError):
        raise VarietyError("variety JSON needs an integer field 'M'") from None
    kind = data.get("kind", HYPERSURFACE)
    return make_variety(list(data.get("generators", [])), M, kind)


def jacobian_at(X: Variety, coords: Sequence[int]) -> list[list[int]]:
    return [[eval_form(g.derivative(i), tuple(coords)) for i in range(X.num_vars)]
            for g in X.generators]


def is_regular_point(X: Variety, P: ProjectivePoint | Sequence[int]) -> bool:
    """True iff the Jacobian of the generators at P has rank M - n over Q."""
    coords = tuple(P)
    if len(coords) != X.num_vars:
        raise VarietyError(f"point has {len(coords)} coordinates, expected {X.num_vars}")
    if not X.contains_point(coords):
        raise PointNotOnVariety(f"point {coords} does not lie on X")
    if not X.generators:
        return True
    return rank(jacobian_at(X, coords)) == X.codim


def is_regular_mod_p(X: Variety, coords: Sequence[int], p: int) -> bool:
    """Smoothness of the mod-p fiber at the reduction of coords (Jacobian rank mod p)."""
    if not X.generators:
        return True
    jac = [[eval_form(g.derivative(i), tuple(coords)) % p for i in range(X.num_vars)]
           for g in X.generators]
    return rank_mod_p(jac, p) == X.codim


def ideal_contains(X: Variety, g: Form) -> bool:
    """Whether g lies in the ideal of X (hypersurfaces and projective space only)."""
    if g.num_vars != X.num_vars:
        raise FormError("form and variety live in different projective spaces")
    if X.kind == AMBIENT:
        return g.is_zero()
    if X.kind != HYPERSURFACE:
        raise UndecidableError("ideal membership for complete intersections is "
                               "undecidable at desk scale")
    if g.is_zero():
        return True
    _, rem = divide(g, X.generators[0])
    return rem.is_zero()


# trial square-freeness: restrict to random lines and test gcd(p, p') = 1


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        _poly_trim(a)
    return a


def _poly_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) - 1


def _restrict_to_line(f: Form, u: Sequence[int], w: Sequence[int]) -> list[Fraction]:
    # coefficients of f(u + t*w) in t, lowest first
    coeffs = [Fraction(0)] * (f.degree + 1)
    for exp, c in f.terms:
        poly = [Fraction(c)]
        for ui, wi, k in zip(u, w, exp):
            for _ in range(k):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for j, v in enumerate(poly):
                    nxt[j] += v * ui
                    nxt[j + 1] += v * wi
                poly = nxt
        for j, v in enumerate(poly):
            coeffs[j] += v
    return coeffs


def _trial_squarefree(f: Form, trials: int = 4) -> bool:
    rng = random.Random(0)
    for _ in range(trials):
        u = [rng.randint(-7, 7) for _ in range(f.num_vars)]
        w = [rng.randint(-7, 7) for _ in range(f.num_vars)]
        p = _poly_trim(_restrict_to_line(f, u, w))
        if len(p) - 1 < f.degree:
            continue
        dp = [p[i] * i for i in range(1, len(p))]
        if _poly_gcd_degree(p, dp) == 0:
            return True
    return False
