"""Partial Steiner (m, r, r-1)-systems by randomized greedy packing.

Every (r-1)-set of vertices lies in at most one edge.  Systems are built
by shuffling all r-subsets of ``range(m)`` and keeping each one that
introduces no repeated (r-1)-subset, so every run is maximal.  Over several
restarts the system with the smallest independence number is kept.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from . import seeding
from .hypercore import Hypergraph, HypergraphError, binom, write_hypergraph
from .indep import DEFAULT_BUDGET, AlphaResult, alpha_exact, alpha_greedy

# restarts above this size rank candidates by the greedy proxy instead of exact alpha
EXACT_ALPHA_MAX_M = 40


@dataclass(frozen=True)
class SteinerSystem:
    base: Hypergraph
    alpha_S: AlphaResult
    seed: int | None = None
    restarts_used: int = 0

    @property
    def m(self) -> int:
        return self.base.n

    @property
    def r(self) -> int:
        return self.base.r

    @classmethod
    def from_hypergraph(cls, H: Hypergraph, budget: int = DEFAULT_BUDGET) -> "SteinerSystem":
        """Wrap an existing packing, computing its independence number exactly."""
        if not verify_steiner(H):
            raise HypergraphError("hypergraph is not a partial Steiner system")
        return cls(H, alpha_exact(H, budget))

    def to_text(self) -> str:
        meta = {
            "kind": "steiner",
            "m": self.m,
            "r": self.r,
            "seed": self.seed,
            "restarts": self.restarts_used,
            "alpha": self.alpha_S.alpha,
            "alpha_status": self.alpha_S.status,
            "alpha_method": self.alpha_S.method,
        }
        return write_hypergraph(self.base, meta)


def verify_steiner(H: Hypergraph) -> bool:
    """True iff no (r-1)-set of vertices lies in two edges."""
    seen = set()
    for e in H.edges:
        for sub in combinations(e, H.r - 1):
            if sub in seen:
                return False
            seen.add(sub)
    return True


def packing_bound(m: int, r: int) -> int:
    """Largest possible edge count of a partial Steiner (m, r, r-1)-system."""
    return binom(m, r - 1) // r


def greedy_packing(m: int, r: int, seed: int) -> Hypergraph:
    rng = random.Random(seed)
    candidates = list(combinations(range(m), r))
    rng.shuffle(candidates)
    covered = set()
    edges = []
    for e in candidates:
        subs = list(combinations(e, r - 1))
        if any(s in covered for s in subs):
            continue
        covered.update(subs)
        edges.append(e)
    return Hypergraph(r, m, tuple(edges))


def generate_steiner(
    m: int,
    r: int,
    restarts: int = 1,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    exact_max_m: int = EXACT_ALPHA_MAX_M,
) -> SteinerSystem:
    """Best of ``restarts`` greedy packings: smallest alpha, then most edges.

    For ``m > exact_max_m`` restarts are ranked by the greedy lower bound and
    the returned ``alpha_S`` carries status ``lower-bound``.
    """
    if r < 3 or m < r:
        raise HypergraphError(f"need m >= r >= 3, got m = {m}, r = {r}")
    if restarts < 1:
        raise HypergraphError("restarts must be >= 1")
    best = None
    best_key = None
    for child in seeding.split(seed, restarts):
        H = greedy_packing(m, r, child)
        if m <= exact_max_m:
            a = alpha_exact(H, budget)
        else:
            a = alpha_greedy(H, child)
        key = (a.alpha, -len(H.edges))
        if best_key is None or key < best_key:
            best, best_key = (H, a), key
    H, a = best
    return SteinerSystem(H, a, seed, restarts)


def quality(alpha: int, m: int, r: int) -> float:
    """alpha / (m ln m)^(1/(r-1)), the empirical a_2 of a system."""
    if m < 3:
        raise HypergraphError(f"quality needs m >= 3, got {m}")
    return alpha / (m * math.log(m)) ** (1.0 / (r - 1))


def steiner_quality(S: SteinerSystem) -> float:
    return quality(S.alpha_S.alpha, S.m, S.r)
