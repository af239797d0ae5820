"""Explicit constants, thresholds and bounds of the covering argument.

Every quantity that can overflow a double (B0, the Dudek threshold, the
predicted number of hypersurfaces) is carried as a natural logarithm.
The constants c1(M), c2(M), c (for mu_max of S^d E^vee), h(X) and the
exponents of the poly(.) factors have no explicit values; they are inputs
with placeholder defaults and are echoed in every plan.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields

from .primes import primes_from

DUDEK_LOG_LOG = 33.3  # N0^{1/3} > exp(exp(33.3))
D0_WINDOW = 50
D0_CAP = 10**6
MAX_SIEVE_N0 = 10**12


class PlannerError(ValueError):
    pass


@dataclass(frozen=True)
class PlanConfig:
    M: int
    n: int
    d: int
    degK: int = 1
    c1M: float = 1.0
    c2M: float = 1.0
    cSym: float = 1.0
    hX: float = 0.0
    polyA_exp: float | None = None
    polyB_exp: float | None = None
    residue_degree: int = 1

    def __post_init__(self):
        if min(self.M, self.n, self.d, self.degK) < 1:
            raise PlannerError("M, n, d and [K:Q] must be positive")
        if self.n > self.M:
            raise PlannerError("n cannot exceed M")
        if min(self.c1M, self.c2M, self.cSym) < 0:
            raise PlannerError("c1M, c2M and cSym must be non-negative")
        if self.residue_degree < 1 or self.v % self.residue_degree:
            raise PlannerError("residue degree must divide lcm(1..[K:Q])")

    @property
    def v(self) -> int:
        return math.lcm(*range(1, self.degK + 1))

    @property
    def poly_a(self) -> float:
        return 2 * self.M if self.polyA_exp is None else self.polyA_exp

    @property
    def poly_b(self) -> float:
        return 2 * self.M if self.polyB_exp is None else self.polyB_exp

    @classmethod
    def from_dict(cls, data: dict) -> "PlanConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names - {"v"}
        if unknown:
            raise PlannerError(f"unknown plan config keys: {sorted(unknown)}")
        return cls(**{k: v for k, v in data.items() if k in names})

    def to_dict(self) -> dict:
        out = asdict(self)
        out["v"] = self.v
        out["polyA_exp"] = self.poly_a
        out["polyB_exp"] = self.poly_b
        return out


def e_constant(m: int) -> float:
    """E_m = m/(m+1) (m!)^{1/m}."""
    if m < 1:
        raise ValueError("m must be positive")
    return m / (m + 1) * math.factorial(m) ** (1 / m)


def delta_log(d: int, n: int, degK: int) -> float:
    num = -4 * (d - 2) - 2 * (n + 3) * d ** (-1 / n) - 2 * d * degK * (2 + math.log(n + 1))
    den = d * degK * d ** (1 / n) * math.factorial(n) ** (-1 / n)
    return num / den


def delta_star(d: int, n: int, degK: int = 1) -> float:
    """The cell-extension parameter: min(1/4, exp(...)), independent of B."""
    if min(d, n, degK) < 1:
        raise ValueError("d, n and [K:Q] must be positive")
    return min(0.25, math.exp(delta_log(d, n, degK)))


def delta_inverse_cap(n: int, degK: int = 1) -> float:
    """The d-free upper bound on 1/delta."""
    expo = (4 + 2 * (n + 3) + 2 * degK * (2 + math.log(n + 1))) / (degK * math.factorial(n) ** (-1 / n))
    return max(4.0, math.exp(expo))


@dataclass(frozen=True)
class DConditions:
    positivity: bool
    bounded: bool
    another: bool

    @property
    def all(self) -> bool:
        return self.positivity and self.bounded and self.another

    def to_dict(self) -> dict:
        return {"positivity": self.positivity, "bounded": self.bounded,
                "another": self.another, "all": self.all}


def d_conditions(D: int, cfg: PlanConfig) -> DConditions:
    """The three conditions on D, each required for every m = 1..n."""
    d, n = cfg.d, cfg.n
    if D <= d - 2:
        raise PlannerError(f"D = {D} must exceed d - 2 = {d - 2}")
    if D < 1:
        raise PlannerError("D must be positive")
    scale = d ** (1 / n) / math.factorial(n) ** (1 / n)
    positivity = True
    for m in range(1, n + 1):
        e = e_constant(m) * scale
        lhs = e * (D - d + 2) / D - cfg.c2M / D
        half = 0.5 * e
        positivity = positivity and lhs > half > 0
    bounded = cfg.c1M / D * math.log(d * (D + n) ** n / math.factorial(n)) < 1
    another = (d ** (1 / n) * n / (n + 1) * (1 - (d - 2) / D)
               - (n + 3) / (2 * n + 2) * n / D) > 0
    return DConditions(positivity, bounded, another)


def d0_search(cfg: PlanConfig, window: int = D0_WINDOW, cap: int = D0_CAP) -> int:
    """Least D0 > d-2 such that every D in [D0, D0 + window] satisfies all conditions."""
    start = max(1, cfg.d - 1)
    run_start = None
    for D in range(start, cap + window + 1):
        if d_conditions(D, cfg).all:
            if run_start is None:
                run_start = D
            if D - run_start >= window:
                return run_start
        else:
            run_start = None
            if D > cap:
                break
    raise PlannerError(f"no D0 found below the search cap {cap}")


def log_n0(log_B: float, cfg: PlanConfig) -> float:
    return cfg.d ** (-1 / cfg.n) * (cfg.n + 1) / (cfg.n * cfg.v) * log_B


def dudek_regime(log_N0: float) -> bool:
    """Whether N0^{1/3} exceeds exp(exp(33.3)), compared in log space."""
    return log_N0 / 3 > math.exp(DUDEK_LOG_LOG)


@dataclass(frozen=True)
class PrimeChoice:
    N0: float
    log_N0: float
    primes: tuple[int, ...]
    a: tuple[int, ...]
    dudek_regime: bool
    window_top: float
    within_window: bool


def n0_and_primes(B, cfg: PlanConfig, r: int) -> PrimeChoice:
    """N0 from log N0 = d^{-1/n} (n+1)/(n v) log B, then the first r primes >= N0.

    Primes come from a sieve; the Dudek interval [N0, (N0^{1/3} + r)^3] is
    only reported, as is the (always false at desk scale) Dudek regime.
    """
    B = float(B)
    if B < 1:
        raise PlannerError("B must be at least 1")
    if r < 1:
        raise PlannerError("r must be positive")
    lN0 = log_n0(math.log(B), cfg)
    if lN0 > math.log(MAX_SIEVE_N0):
        raise PlannerError(f"N0 = exp({lN0:.4g}) is beyond sieve range")
    N0 = math.exp(lN0)
    primes = tuple(primes_from(N0, r))
    a_i = cfg.v // cfg.residue_degree
    top = (N0 ** (1 / 3) + r) ** 3
    return PrimeChoice(N0, lN0, primes, (a_i,) * r, dudek_regime(lN0), top,
                       all(N0 <= p <= top for p in primes))


@dataclass(frozen=True)
class Constants:
    C1: float
    C2: float
    C3: float
    rank_SdE: int
    mu_max_upper: float


def constants_C(cfg: PlanConfig) -> Constants:
    """C1, C2, C3 with mu_max(S^d E^vee) replaced by its upper bound cSym * d."""
    M, n, d = cfg.M, cfg.n, cfg.d
    c = M - n
    if c <= 0:
        raise PlannerError("M - n must be positive (X would be all of P^M)")
    rk = math.comb(d + M, M)
    mu_max = cfg.cSym * d
    C1 = ((n + 2) * mu_max + 0.5 * (n + 2) * math.log(rk)
          + d / 2 * math.log((n + 2) * c) + d / 2 * (n + 1) * math.log(M + 1))
    C2 = (c / 2 * math.log(rk) + 0.5 * math.log(math.comb(M + 1, c))
          + math.log(math.sqrt(math.factorial(c))) + c * math.log(d))
    return Constants(C1, C2, c * C1 + C2, rk, mu_max)


def chen_threshold(cfg: PlanConfig) -> float:
    """n!/(d (2n+2)^{n+1}) h(X) - 3/2 log(M+1) - 2^n."""
    n = cfg.n
    return (math.factorial(n) / (cfg.d * (2 * n + 2) ** (n + 1)) * cfg.hX
            - 1.5 * math.log(cfg.M + 1) - 2 ** n)


@dataclass(frozen=True)
class REstimate:
    r: int
    A1: float
    A2: float
    A3: float
    log_N0: float
    small_height_branch: bool

    @property
    def r_lt_A3(self) -> bool:
        return self.r < self.A3


def r_estimate(B, cfg: PlanConfig) -> REstimate:
    """Number of primes r and the constants A1, A2, A3 bounding it."""
    M, n, d, K = cfg.M, cfg.n, cfg.d, cfg.degK
    log_B = math.log(float(B))
    lN0 = log_n0(log_B, cfg)
    if lN0 <= 0:
        raise PlannerError("log N0 must be positive (need B > 1)")
    C3 = constants_C(cfg).C3
    c = M - n
    r = math.floor(((c * (d - 1) * log_B + (c * cfg.hX + C3) * K) / lN0) + 1)
    w = (2 * n + 2) ** (n + 1) / math.factorial(n)
    A1 = c * (d - 1) + w * c * d
    A2 = K * (C3 + w * d * (1.5 * math.log(M + 1) + 2 ** n))
    A3 = cfg.v * (A1 + d * A2) / (d ** (-1 / n) * (n + 1) / n) + 1
    small = log_B / K < chen_threshold(cfg)
    est = REstimate(r, A1, A2, A3, lN0, small)
    if not small and c == 1 and log_B >= 1 / d and not est.r_lt_A3:
        raise PlannerError(f"r = {r} is not below A3 = {A3}")
    return est


def archimedean_log_bound(mu: int, m: int, delta: float, cfg: PlanConfig) -> float:
    """log of mu^{c1 mu} delta^{E_m mu^{1+1/m} - c2 mu}."""
    return (cfg.c1M * mu * math.log(mu)
            + (e_constant(m) * mu ** (1 + 1 / m) - cfg.c2M * mu) * math.log(delta))


def log_cell_cover_size(mu: int, delta: float, cfg: PlanConfig) -> float:
    """log of (M+1) poly_M(d) poly_M(mu log(1/delta)) delta^{-2n}."""
    t = mu * math.log(1 / delta)
    return (math.log(cfg.M + 1) + cfg.poly_a * math.log(cfg.d)
            + cfg.poly_b * math.log(t) - 2 * cfg.n * math.log(delta))


def log_b0(cfg: PlanConfig, D0: int) -> float:
    n, d = cfg.n, cfg.d
    dudek_term = d ** (1 + 1 / n) * n * cfg.v / (n + 1) * 3 * math.exp(DUDEK_LOG_LOG)
    return max(D0, 2 * (cfg.M - n) * (d - 1) + n + 2, dudek_term) / d


@dataclass(frozen=True)
class CoverBound:
    log_N: float
    log_cell_cover_size: float
    log_B0: float
    archimedean_log_bounds: tuple[float, ...]

    @property
    def log10_B0(self) -> float:
        return self.log_B0 / math.log(10)


def predicted_cover_bound(B, cfg: PlanConfig, delta: float, mu: int,
                          r: int | None = None, D0: int | None = None) -> CoverBound:
    """Log of the final bound on N, of the cellular cover size, and of B0."""
    if not 0 < delta < 1:
        raise PlannerError("delta must lie in (0, 1)")
    n, K, v = cfg.n, cfg.degK, cfg.v
    if r is None:
        r = r_estimate(B, cfg).r
    if D0 is None:
        D0 = d0_search(cfg)
    lN0 = log_n0(math.log(float(B)), cfg)
    t = mu * math.log(1 / delta)
    log_N = (math.log(r) + math.log(cfg.d) + math.log(n)
             + 3 * v * n * math.log(math.exp(lN0 / 3) + r)
             + K * math.log(cfg.M + 1) + cfg.poly_a * math.log(cfg.d)
             + cfg.poly_b * math.log(t) - 2 * n * K * math.log(delta))
    arch = tuple(archimedean_log_bound(mu, m, delta, cfg) for m in range(1, n + 1))
    return CoverBound(log_N, log_cell_cover_size(mu, delta, cfg), log_b0(cfg, D0), arch)


def cover_degree(B, d: int) -> int:
    """D = ceil(d log B), floored at 1."""
    return max(1, math.ceil(d * math.log(float(B)) - 1e-12))


@dataclass
class CoverPlan:
    B: float
    D: int
    delta: float
    D0: int
    N0: float
    primes: list[int]
    a_exponents: list[int]
    r: int
    A1: float
    A2: float
    A3: float
    C1: float
    C2: float
    C3: float
    mu: int
    mu_source: str
    log_predicted_N: float
    log_cell_cover_size: float
    log_B0: float
    dudek_regime: bool
    primes_within_dudek_window: bool
    conditions_at_D: dict
    archimedean_log_bounds: list[float]
    small_height_branch: bool
    chen_threshold: float
    config: PlanConfig
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in (
            "B", "D", "delta", "D0", "N0", "primes", "a_exponents", "r", "A1", "A2", "A3",
            "C1", "C2", "C3", "mu", "mu_source", "log_predicted_N", "log_cell_cover_size",
            "log_B0", "dudek_regime", "primes_within_dudek_window", "conditions_at_D",
            "archimedean_log_bounds", "small_height_branch", "chen_threshold", "notes")}
        out["log10_B0"] = self.log_B0 / math.log(10)
        out["r_lt_A3"] = self.r < self.A3
        out["config"] = self.config.to_dict()
        return out


def make_plan(B, cfg: PlanConfig, r1: int | None = None) -> CoverPlan:
    """Evaluate every constant of the covering argument for height bound B."""
    from .detmethod import chardin_upper_bound, r1_hypersurface

    if float(B) <= 1:
        raise PlannerError("planning needs B > 1")
    D = cover_degree(B, cfg.d)
    delta = delta_star(cfg.d, cfg.n, cfg.degK)
    D0 = d0_search(cfg)
    consts = constants_C(cfg)
    est = r_estimate(B, cfg)
    choice = n0_and_primes(B, cfg, est.r)
    if r1 is not None:
        mu, source = r1, "given"
    elif cfg.M - cfg.n == 1:
        mu, source = r1_hypersurface(cfg.M, cfg.d, D), "hypersurface closed form"
    else:
        mu, source = chardin_upper_bound(cfg.d, cfg.n, D), "Chardin upper bound"
    bound = predicted_cover_bound(B, cfg, delta, mu, r=est.r, D0=D0)
    conds = d_conditions(D, cfg).to_dict() if D > cfg.d - 2 else None
    notes = [
        "mu_max(S^d E^vee) replaced by its upper bound cSym*d",
        "c1M, c2M, cSym, hX and the poly exponents are placeholders, not derived values",
        "primes from a sieve; Dudek's theorem is used only as a regime predicate",
        "B0 and N are reported as natural logarithms",
    ]
    return CoverPlan(
        B=float(B), D=D, delta=delta, D0=D0, N0=choice.N0, primes=list(choice.primes),
        a_exponents=list(choice.a), r=est.r, A1=est.A1, A2=est.A2, A3=est.A3,
        C1=consts.C1, C2=consts.C2, C3=consts.C3, mu=mu, mu_source=source,
        log_predicted_N=bound.log_N, log_cell_cover_size=bound.log_cell_cover_size,
        log_B0=bound.log_B0, dudek_regime=choice.dudek_regime,
        primes_within_dudek_window=choice.within_window, conditions_at_D=conds,
        archimedean_log_bounds=list(bound.archimedean_log_bounds),
        small_height_branch=est.small_height_branch, chen_threshold=chen_threshold(cfg),
        config=cfg, notes=notes,
    )
