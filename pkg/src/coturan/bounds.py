"""Closed-form bounds, the constants ledger, the exhaustive T_ell oracle and scaling fits.

Turan-density bounds and oracle values are exact rationals/integers;
floating point appears only in the envelope and fitting layers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations

from .hypercore import binom

ORACLE_MAX_EDGES = 24

USER = "user-supplied"
FITTED = "fitted-empirical"
DERIVED = "derived"


class ConstantUnavailable(LookupError):
    pass


def classical_bounds(t: int, r: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds on the Turan density of K_t^r.

    1 - ((r-1)/(t-1))^(r-1) <= pi(K_t^r) <= 1 - 1/C(t-1, r-1).
    """
    if r < 3 or t <= r:
        raise ValueError(f"need t > r >= 3, got t = {t}, r = {r}")
    lower = 1 - Fraction(r - 1, t - 1) ** (r - 1)
    upper = 1 - Fraction(1, binom(t - 1, r - 1))
    return lower, upper


@dataclass(frozen=True)
class ConstantsLedger:
    """Named constants with provenance tags.

    Relations: c0 = 4^(-1/(r-1)) b1, c1 = (r-1) c0^(r-1) / 2,
    c2 = (r-1)^r a2^(r-1).  Nothing is filled in by default.
    """

    r: int
    values: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)

    def with_constant(self, name: str, value: float, source: str = USER) -> "ConstantsLedger":
        if name not in ("a2", "b1", "c0", "c1", "c2"):
            raise KeyError(name)
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")
        return replace(self, values={**self.values, name: float(value)}, sources={**self.sources, name: source})

    def get(self, name: str) -> float:
        if name not in self.values:
            raise ConstantUnavailable(f"constant {name} unavailable (r = {self.r})")
        return self.values[name]

    def derived(self) -> "ConstantsLedger":
        """Fill c0, c1, c2 from their sources where those are present and they are not."""
        r = self.r
        led = self
        if "c0" not in led.values and "b1" in led.values:
            led = led.with_constant("c0", 4 ** (-1 / (r - 1)) * led.values["b1"], DERIVED)
        if "c1" not in led.values and "c0" in led.values:
            led = led.with_constant("c1", (r - 1) * led.values["c0"] ** (r - 1) / 2, DERIVED)
        if "c2" not in led.values and "a2" in led.values:
            led = led.with_constant("c2", (r - 1) ** r * led.values["a2"] ** (r - 1), DERIVED)
        return led

    def inconsistencies(self, rel_tol: float = 1e-12) -> list[str]:
        r, v = self.r, self.values
        out = []
        checks = [
            ("c0", "b1", lambda b1: 4 ** (-1 / (r - 1)) * b1),
            ("c1", "c0", lambda c0: (r - 1) * c0 ** (r - 1) / 2),
            ("c2", "a2", lambda a2: (r - 1) ** r * a2 ** (r - 1)),
        ]
        for target, src, rel in checks:
            if target in v and src in v and not math.isclose(v[target], rel(v[src]), rel_tol=rel_tol):
                out.append(f"{target} = {v[target]} but relation from {src} gives {rel(v[src])}")
        return out


def a2_to_c2(a2: float, r: int) -> float:
    return (r - 1) ** r * a2 ** (r - 1)


def tau_envelope(t: int, r: int, ledger: ConstantsLedger) -> tuple[float, float]:
    """(c1 ln t / t^(r-1), c2 ln t / t^(r-1)) for the codegree threshold tau_{r-1}(t, r)."""
    if t < 3:
        raise ValueError(f"need t >= 3, got {t}")
    led = ledger.derived()
    scale = math.log(t) / t ** (r - 1)
    return led.get("c1") * scale, led.get("c2") * scale


@dataclass(frozen=True)
class BoundsReport:
    t: int
    r: int
    turan_lower: Fraction
    turan_upper: Fraction
    tau1_lower: Fraction
    tau1_upper: Fraction
    tau_lower: float | None
    tau_upper: float | None
    pi_codegree_lower: float | None
    pi_codegree_upper: float | None


def bounds_report(t: int, r: int, ledger: ConstantsLedger | None = None) -> BoundsReport:
    lo, hi = classical_bounds(t, r)
    tau_lo = tau_hi = None
    if ledger is not None:
        led = ledger.derived()
        scale = math.log(t) / t ** (r - 1)
        tau_lo = led.values["c1"] * scale if "c1" in led.values else None
        tau_hi = led.values["c2"] * scale if "c2" in led.values else None
    return BoundsReport(
        t,
        r,
        lo,
        hi,
        1 - hi,
        1 - lo,
        tau_lo,
        tau_hi,
        None if tau_hi is None else 1 - tau_hi,
        None if tau_lo is None else 1 - tau_lo,
    )


def refined_c_values(r: int) -> dict:
    """Leading-order refined constants; asymptotic only, not valid at finite r."""
    c1 = Fraction(r - 1, 3) * math.factorial(r - 3)
    if r % 2 == 0:
        c2 = r * math.factorial(r)
    else:
        c2 = 2 ** (r - 1) * r * math.factorial(r)
    return {"c1": c1, "c2": Fraction(c2), "parity": "even" if r % 2 == 0 else "odd", "tag": "asymptotic"}


def t_ell_oracle(n: int, t: int, r: int, ell: int) -> int | None:
    """T_ell(n, t, r): least max ell-degree of an n-vertex r-graph with alpha < t.

    Exhaustive search over edge sets (include/exclude in lexicographic
    order).  Prunes are exact: a branch stops when its max ell-degree
    already reaches the incumbent, when some t-set can no longer receive an
    edge, or when every t-set already holds an edge (adding edges cannot
    lower the max degree).  Returns None when no r-graph qualifies
    (t <= r - 1 <= n - 1).
    """
    if not 1 <= ell < r:
        raise ValueError(f"ell must lie in [1, {r - 1}], got {ell}")
    N = binom(n, r)
    if N > ORACLE_MAX_EDGES:
        raise ValueError(f"C({n}, {r}) = {N} exceeds the exhaustive limit {ORACLE_MAX_EDGES}")
    if t > n:
        return 0
    if t < r:
        return None
    rsets = list(combinations(range(n), r))
    ell_index = {s: i for i, s in enumerate(combinations(range(n), ell))}
    edge_ell = [[ell_index[s] for s in combinations(e, ell)] for e in rsets]
    tsets = list(combinations(range(n), t))
    edge_tsets = [[] for _ in rsets]
    for j, T in enumerate(tsets):
        Ts = set(T)
        for i, e in enumerate(rsets):
            if Ts.issuperset(e):
                edge_tsets[i].append(j)
    hits = [0] * len(tsets)
    remaining = [binom(t, r)] * len(tsets)
    uncovered = [len(tsets)]
    deg = [0] * len(ell_index)
    best = [binom(n - ell, r - ell)]  # the complete r-graph qualifies

    def rec(i: int, cur: int) -> None:
        if uncovered[0] == 0:
            best[0] = min(best[0], cur)
            return
        if cur >= best[0] or i == N:
            return
        # include edge i
        new = cur
        for s in edge_ell[i]:
            deg[s] += 1
            new = max(new, deg[s])
        if new < best[0]:
            for j in edge_tsets[i]:
                if hits[j] == 0:
                    uncovered[0] -= 1
                hits[j] += 1
            rec(i + 1, new)
            for j in edge_tsets[i]:
                hits[j] -= 1
                if hits[j] == 0:
                    uncovered[0] += 1
        for s in edge_ell[i]:
            deg[s] -= 1
        # exclude edge i
        dead = False
        for j in edge_tsets[i]:
            remaining[j] -= 1
            if remaining[j] == 0 and hits[j] == 0:
                dead = True
        if not dead:
            rec(i + 1, cur)
        for j in edge_tsets[i]:
            remaining[j] += 1

    rec(0, 0)
    return best[0]


@dataclass(frozen=True)
class ScalingFit:
    r: int
    ts: tuple[int, ...]
    scaled: tuple[float, ...]
    c_hat: float
    residuals: tuple[float, ...]

    @property
    def spread(self) -> float:
        """max/min of tau t^(r-1) / ln t over the points."""
        return max(self.scaled) / min(self.scaled)


def fit_scaling(points, r: int = 3) -> ScalingFit:
    """Least-squares constant for tau ~ c ln t / t^(r-1).

    Minimising sum (y_i - c)^2 over c with y_i = tau_i t_i^(r-1) / ln t_i gives
    the mean.  Points are sorted by t first so the result is order-free.
    """
    pts = sorted((int(t), tau) for t, tau in points)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    ts = [t for t, _ in pts]
    if len(set(ts)) != len(ts):
        raise ValueError("t values must be distinct")
    if ts[0] < 3:
        raise ValueError("every t must be >= 3")
    scaled = [float(Fraction(tau) * t ** (r - 1)) / math.log(t) for t, tau in pts]
    c_hat = math.fsum(scaled) / len(scaled)
    residuals = tuple(y - c_hat for y in scaled)
    return ScalingFit(r, tuple(ts), tuple(scaled), c_hat, residuals)
