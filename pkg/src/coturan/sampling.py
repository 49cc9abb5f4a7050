"""Random induced subhypergraphs with controlled codegree density.

A uniformly random m-subset of a hypergraph on n vertices keeps its
maximum codegree density, up to an additive epsilon, with probability at
least 1/2 once m satisfies the two size conditions in
:func:`lemma_m_conditions`.  :func:`subsample` realises this by rejection
sampling and checks every accepted sample.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import seeding
from .hypercore import Hypergraph, HypergraphError, codegree, induced

_PREC = 60


class SubsampleFailure(RuntimeError):
    """No accepted sample within the trial limit."""


@dataclass(frozen=True)
class SubsampleParams:
    epsilon: float
    m: int
    max_trials: int = 64
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_trials < 1:
            raise ValueError("max_trials must be >= 1")
        if self.m < 1:
            raise ValueError("m must be >= 1")


def _log_condition_gap(m: int, r: int, epsilon) -> mpmath.mpf:
    """ln( C(m, r-1) exp(-eps^2 (m-r+1)/12) ) - ln(1/2), at high precision."""
    with mpmath.workdps(_PREC):
        eps = mpmath.mpf(epsilon)
        log_binom = mpmath.log(math.comb(m, r - 1))
        return log_binom - eps**2 * (m - r + 1) / 12 + mpmath.log(2)


def lemma_m_conditions(m: int, r: int, epsilon: float) -> bool:
    """m >= 2(r-1)/eps and C(m, r-1) e^{-eps^2 (m-r+1)/12} <= 1/2."""
    if m < r:
        raise ValueError(f"need m >= r, got m = {m}, r = {r}")
    with mpmath.workdps(_PREC):
        if mpmath.mpf(m) * mpmath.mpf(epsilon) < 2 * (r - 1):
            return False
        return _log_condition_gap(m, r, epsilon) <= 0


def min_lemma_m(r: int, epsilon: float) -> int:
    """Least m >= r satisfying :func:`lemma_m_conditions`.

    The log of the second condition is concave in m, so past the first
    admissible m it fails on one interval and then holds for good; a
    galloping search finds the end of that interval.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"need 0 < epsilon < 1, got {epsilon}")
    lo = max(r, math.ceil(2 * (r - 1) / epsilon) - 1)
    with mpmath.workdps(_PREC):
        while mpmath.mpf(lo) * mpmath.mpf(epsilon) < 2 * (r - 1):
            lo += 1
    if lemma_m_conditions(lo, r, epsilon):
        return lo
    step = 1
    hi = lo + step
    while not lemma_m_conditions(hi, r, epsilon):
        lo = hi
        step *= 2
        hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if lemma_m_conditions(mid, r, epsilon):
            hi = mid
        else:
            lo = mid
    return hi


def _edge_array(H: Hypergraph) -> np.ndarray:
    return np.asarray(H.edges, dtype=np.int64).reshape(-1, H.r)


def _max_codegree_on(edges: np.ndarray, members: np.ndarray, n: int) -> int:
    """Max (r-1)-degree of the subhypergraph induced on ``members``."""
    inside = np.zeros(n, dtype=bool)
    inside[members] = True
    kept = edges[inside[edges].all(axis=1)]
    if len(kept) == 0:
        return 0
    r = kept.shape[1]
    keys = []
    for drop in range(r):
        sub = np.delete(kept, drop, axis=1)
        key = np.zeros(len(sub), dtype=object if n ** (r - 1) >= 2**62 else np.int64)
        for j in range(r - 1):
            key = key * n + sub[:, j]
        keys.append(key)
    _, counts = np.unique(np.concatenate(keys), return_counts=True)
    return int(counts.max())


@dataclass(frozen=True)
class SubsampleResult:
    sub: Hypergraph
    vertices: tuple[int, ...]
    trials: int
    density_host: Fraction
    density_sub: Fraction
    epsilon: float

    def stats(self) -> dict:
        return {
            "trials": self.trials,
            "m": len(self.vertices),
            "density_host": float(self.density_host),
            "density_sub": float(self.density_sub),
            "epsilon": self.epsilon,
        }


def accepts(H: Hypergraph, members, epsilon: float, host_delta: int | None = None) -> tuple[bool, Fraction, Fraction]:
    """Whether the subhypergraph on ``members`` meets the codegree-density bound."""
    members = np.asarray(sorted(members), dtype=np.int64)
    if host_delta is None:
        host_delta = codegree(H)
    host = Fraction(host_delta, H.n)
    sub = Fraction(_max_codegree_on(_edge_array(H), members, H.n), len(members))
    return sub <= host + Fraction(epsilon), host, sub


def acceptance_rate(H: Hypergraph, m: int, epsilon: float, trials: int, seed: int) -> float:
    """Fraction of independent uniform m-subsets meeting the density bound."""
    edges = _edge_array(H)
    host = Fraction(codegree(H), H.n)
    bound = host + Fraction(epsilon)
    hits = 0
    for s in seeding.split(seed, trials):
        members = np.random.default_rng(s).choice(H.n, size=m, replace=False)
        if Fraction(_max_codegree_on(edges, members, H.n), m) <= bound:
            hits += 1
    return hits / trials


def subsample(H: Hypergraph, p: SubsampleParams, check_conditions: bool = True) -> SubsampleResult:
    """Induced subhypergraph on ``p.m`` random vertices meeting the density bound.

    Trial i draws its vertex set from the i-th seed split off ``p.seed``;
    the first accepting trial wins.
    """
    if p.m > H.n:
        raise HypergraphError(f"m = {p.m} exceeds n = {H.n}")
    if check_conditions and not lemma_m_conditions(p.m, H.r, p.epsilon):
        raise ValueError(f"m = {p.m} does not satisfy the size conditions for r = {H.r}, epsilon = {p.epsilon}")
    edges = _edge_array(H)
    host_delta = codegree(H)
    host = Fraction(host_delta, H.n)
    bound = host + Fraction(p.epsilon)
    for i, s in enumerate(seeding.split(p.seed, p.max_trials), start=1):
        members = np.sort(np.random.default_rng(s).choice(H.n, size=p.m, replace=False))
        dens = Fraction(_max_codegree_on(edges, members, H.n), p.m)
        if dens <= bound:
            sub = induced(H, members.tolist())
            # re-derive from the materialised subhypergraph rather than trusting the fast path
            if Fraction(codegree(sub), p.m) != dens:
                raise AssertionError("codegree fast path disagrees with induced subhypergraph")
            return SubsampleResult(sub, tuple(members.tolist()), i, host, dens, p.epsilon)
    raise SubsampleFailure(f"no accepted sample in {p.max_trials} trials")


def delta_regime(delta: float, r: int) -> bool:
    """Both small-delta conditions used to pick m = ceil(1/delta^4).

    24 (r-1) ln ceil(1/delta^4) <= 1/delta^2  and
    1/delta^4 <= exp((1/(2 delta))^(1/(3 (r-1)^2))) - 1.
    """
    if not 0 < delta < 0.25:
        raise ValueError(f"need 0 < delta < 1/4, got {delta}")
    with mpmath.workdps(_PREC):
        dl = mpmath.mpf(delta)
        m = mpmath.ceil(1 / dl**4)
        first = 24 * (r - 1) * mpmath.log(m) <= 1 / dl**2
        y = (1 / (2 * dl)) ** (mpmath.mpf(1) / (3 * (r - 1) ** 2))
        # ln(e^y - 1) = y + ln(1 - e^-y), stable for large y
        rhs_log = y + mpmath.log(-mpmath.expm1(-y))
        second = mpmath.log(1 / dl**4) <= rhs_log
        return bool(first and second)


def regime_m(delta: float) -> int:
    with mpmath.workdps(_PREC):
        return int(mpmath.ceil(1 / mpmath.mpf(delta) ** 4))


def sparse_codegree_window(n: float, r: int) -> float:
    """Upper end n / (ln n)^(3 (r-1)^2) of the admissible codegree range."""
    return n / math.log(n) ** (3 * (r - 1) ** 2)


def sparse_alpha_bound(n: float, d: float, r: int, b1: float) -> float:
    """b1 ((n/d) ln(n/d))^(1/(r-1)), valid for 0 < d < n/(ln n)^(3(r-1)^2)."""
    window = sparse_codegree_window(n, r)
    if not 0 < d < window:
        raise ValueError(f"d = {d} outside the window 0 < d < n/(ln n)^{3 * (r - 1) ** 2} = {window:.6g}")
    return b1 * ((n / d) * math.log(n / d)) ** (1.0 / (r - 1))


def empirical_b1(alpha: int, n: int, d: int, r: int) -> float:
    """alpha / ((n/d) ln(n/d))^(1/(r-1)) for a measured instance (no window check)."""
    x = n / d
    if x <= 1:
        raise ValueError(f"need n/d > 1, got {x}")
    return alpha / (x * math.log(x)) ** (1.0 / (r - 1))
