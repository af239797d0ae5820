"""Covering S_1(X, B) by degree-D hypersurfaces, one per occupied regular
residue class, and independent verification of the result.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from . import planner
from .detmethod import evaluation_matrix, fd_basis, find_hypersurface
from .enumeration import DEFAULT_WORK_LIMIT, enumerate_points
from .heights import ProjectivePoint, as_fraction
from .polyform import Form, eval_form
from .primes import primes_from
from .residue import reduce_point, residue_classes
from .variety import AMBIENT, HYPERSURFACE, Variety, VarietyError, ideal_contains, is_regular_point

THEOREM = "theorem"
ADAPTIVE = "adaptive"
DEFAULT_MAX_PRIMES = 50


@dataclass
class ClassRecord:
    p: int
    a: int
    coords: tuple[int, ...]
    points: list[ProjectivePoint]
    form: Form | None

    @property
    def rank_full(self) -> bool:
        return self.form is None

    def to_json(self) -> dict:
        return {
            "p": self.p, "a": self.a, "class": list(self.coords),
            "points": [list(P.coords) for P in self.points],
            "hypersurface": str(self.form) if self.form is not None else None,
            "rank_full": self.rank_full,
        }


@dataclass
class CoverReport:
    variety: Variety
    B: str
    D: int
    delta: float
    mode: str
    primes: list[int]
    records: list[ClassRecord]
    hypersurfaces: list[Form]
    regular_point_count: int
    uncovered: list[ProjectivePoint]
    proper: bool
    degree_uniform: bool
    class_count_total: int
    log_predicted_N: float | None
    config: planner.PlanConfig
    notes: list[str] = field(default_factory=list)
    timing: float | None = None

    @property
    def covered(self) -> bool:
        return not self.uncovered

    @property
    def N_actual(self) -> int:
        return len(self.hypersurfaces)

    @property
    def verdicts(self) -> dict:
        return {"covered": self.covered, "proper": self.proper,
                "degree_uniform": self.degree_uniform}

    @property
    def all_true(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        out = {
            "variety": self.variety.summary(),
            "B": self.B,
            "D": self.D,
            "delta": self.delta,
            "mode": self.mode,
            "primes": self.primes,
            "records": [r.to_json() for r in self.records],
            "rank_full_classes": sum(r.rank_full for r in self.records),
            "hypersurfaces": [str(F) for F in self.hypersurfaces],
            "verdicts": self.verdicts,
            "uncovered": [list(P.coords) for P in self.uncovered],
            "counts": {
                "regular_points": self.regular_point_count,
                "N_actual": self.N_actual,
                "class_count_total": self.class_count_total,
                "log_N_predicted": self.log_predicted_N,
            },
            "config": self.config.to_dict(),
            "notes": self.notes,
        }
        if self.timing is not None:
            out["timing_seconds"] = self.timing
        return out


def _default_config(X: Variety) -> planner.PlanConfig:
    return planner.PlanConfig(M=X.ambient_dim, n=X.dim, d=X.degree)


def _covered_by(coeffs_by_form, basis, P) -> bool:
    column = [row[0] for row in evaluation_matrix(basis, [P]).entries]
    return any(sum(c * x for c, x in zip(coeffs, column)) == 0 for coeffs in coeffs_by_form)


def run_cover(X: Variety, B, mode: str = ADAPTIVE, config: planner.PlanConfig | None = None,
              a: int | None = None, max_primes: int = DEFAULT_MAX_PRIMES,
              work_limit: int = DEFAULT_WORK_LIMIT, with_timing: bool = False) -> CoverReport:
    """Cover the regular points of height <= B by degree-D hypersurfaces.

    theorem mode takes r and the primes from the planner.  adaptive mode
    starts at the first prime >= N0 and adds primes until every regular point
    lies on a constructed hypersurface or max_primes is reached.  Each prime
    contributes one hypersurface per regular residue class holding points.  A
    class whose evaluation matrix has full column rank is recorded as a
    regime failure, not raised.
    """
    if X.kind not in (HYPERSURFACE, AMBIENT):
        raise VarietyError("run_cover needs a hypersurface or projective space")
    if mode not in (THEOREM, ADAPTIVE):
        raise ValueError(f"unknown mode {mode!r}")
    b = as_fraction(B)
    if b < 1:
        raise ValueError("B must be at least 1")
    t0 = time.perf_counter()
    cfg = config or _default_config(X)
    D = planner.cover_degree(b, X.degree)
    delta = planner.delta_star(X.degree, X.dim, cfg.degK)
    a_exp = a if a is not None else cfg.v // cfg.residue_degree
    notes = []

    points = [P for P in enumerate_points(X, b, work_limit) if is_regular_point(X, P)]
    basis = fd_basis(X, D)
    basis_set = set(basis.monomials)

    log_N = None
    if X.kind == HYPERSURFACE and b > 1:
        try:
            plan = planner.make_plan(b, cfg, r1=basis.r1)
            log_N = plan.log_predicted_N
        except planner.PlannerError as exc:
            notes.append(f"planner unavailable: {exc}")

    if mode == THEOREM:
        if b <= 1:
            raise ValueError("theorem mode needs B > 1")
        est = planner.r_estimate(b, cfg)
        prime_iter = iter(planner.n0_and_primes(b, cfg, est.r).primes)
    else:
        lN0 = planner.log_n0(math.log(b), cfg)
        prime_iter = iter(primes_from(math.exp(lN0), max_primes))
        notes.append("adaptive mode: success below B0 is an empirical observation, "
                     "not a consequence of the theorem")

    records: list[ClassRecord] = []
    coeffs_by_form: list[list] = []
    forms: list[Form] = []
    covered: set[ProjectivePoint] = set()
    primes_used: list[int] = []
    class_total = 0

    for p in prime_iter:
        if mode == ADAPTIVE and len(covered) == len(points):
            break
        primes_used.append(p)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            class_total += sum(c.regular for c in residue_classes(X, p, a_exp))
        groups: dict[tuple[int, ...], list[ProjectivePoint]] = {}
        for P in points:
            cls = reduce_point(X, P, p, a_exp)
            if cls.regular:
                groups.setdefault(cls.coords, []).append(P)
        for coords in sorted(groups):
            members = groups[coords]
            F = find_hypersurface(X, D, members)
            records.append(ClassRecord(p, a_exp, coords, members, F))
            if F is None:
                continue
            forms.append(F)
            coeffs_by_form.append([F.as_dict().get(m, 0) for m in basis.monomials])
            covered.update(P for P in points if P not in covered
                           and _covered_by(coeffs_by_form[-1:], basis, P))

    uncovered = [P for P in points if not _covered_by(coeffs_by_form, basis, P)]
    proper = all(not F.is_zero() and all(e in basis_set for e, _ in F.terms) for F in forms)
    degree_uniform = all(F.degree == D for F in forms)
    if mode == ADAPTIVE and uncovered:
        notes.append(f"prime cap of {max_primes} reached with {len(uncovered)} points uncovered")

    return CoverReport(
        variety=X, B=str(b), D=D, delta=delta, mode=mode, primes=primes_used,
        records=records, hypersurfaces=forms, regular_point_count=len(points),
        uncovered=uncovered, proper=proper, degree_uniform=degree_uniform,
        class_count_total=class_total, log_predicted_N=log_N, config=cfg, notes=notes,
        timing=(time.perf_counter() - t0) if with_timing else None,
    )


def verify_cover(X: Variety, B, forms: Sequence[Form], D: int | None = None,
                 work_limit: int = DEFAULT_WORK_LIMIT) -> dict:
    """Recompute the verdicts from scratch with eval_form and ideal membership."""
    b = as_fraction(B)
    if D is None:
        D = planner.cover_degree(b, X.degree)
    regular = [P for P in enumerate_points(X, b, work_limit) if is_regular_point(X, P)]
    uncovered = [P for P in regular if not any(eval_form(F, P.coords) == 0 for F in forms)]
    contained = [str(F) for F in forms if ideal_contains(X, F)]
    wrong_degree = [str(F) for F in forms if F.degree != D]
    return {
        "covered": not uncovered,
        "proper": not contained,
        "degree_uniform": not wrong_degree,
        "D": D,
        "regular_points": len(regular),
        "uncovered": [list(P.coords) for P in uncovered],
        "containing_X": contained,
        "wrong_degree": wrong_degree,
    }
