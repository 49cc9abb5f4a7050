"""Independence number: exact branch and bound, exhaustive oracle, greedy bound.

``alpha_exact`` first folds classes of non-adjacent twins (vertices with
identical links) into single weighted vertices.  Some maximum independent
set contains each such class entirely or not at all, so the weighted
optimum of the quotient equals alpha(H).  Blowups with d <= r - 1 collapse
to their base system this way.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _bbkernel
from .hypercore import Hypergraph, HypergraphError, _check_vertex_set

DEFAULT_BUDGET = 10**8
EXHAUSTIVE_MAX_N = 22

EXACT = "exact"
INCONCLUSIVE = "inconclusive"
LOWER_BOUND = "lower-bound"
BOUNDED = "bounded"


@dataclass(frozen=True)
class AlphaResult:
    """Outcome of an independence computation.

    ``alpha`` is always the size of ``witness``, hence a lower bound on the
    independence number.  ``upper`` is a proven upper bound when one is
    known; for exact results ``upper == alpha``.
    """

    alpha: int
    witness: tuple[int, ...]
    method: str
    status: str
    upper: int | None = None
    nodes: int = 0

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT


def is_independent(H: Hypergraph, W: Iterable[int]) -> bool:
    members = set(_check_vertex_set(H, W))
    if len(members) < H.r:
        return True
    return not any(members.issuperset(e) for e in H.edges)


def twin_classes(H: Hypergraph) -> list[tuple[int, ...]]:
    """Partition of V(H) into classes of vertices with identical links.

    Vertices with equal links never share an edge and swapping any two of
    them is an automorphism.  Classes are ordered by smallest member.
    """
    groups: dict[frozenset, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(H.link(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def _fold(H: Hypergraph):
    classes = twin_classes(H)
    where = {}
    for ci, cls in enumerate(classes):
        for v in cls:
            where[v] = ci
    qedges = sorted({tuple(sorted(where[v] for v in e)) for e in H.edges})
    weights = np.array([len(c) for c in classes], dtype=np.int64)
    return classes, qedges, weights


def _pack(n: int, r: int, edges, weights):
    W = max(1, (n + 63) // 64)
    E = len(edges)
    emat = np.zeros((E, W), dtype=np.uint64)
    deg = np.zeros(n + 1, dtype=np.int64)
    for i, e in enumerate(edges):
        for v in e:
            emat[i, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
            deg[v + 1] += 1
    inc_ptr = np.cumsum(deg)
    inc_idx = np.empty(inc_ptr[-1], dtype=np.int64)
    fill = inc_ptr[:-1].copy()
    for i, e in enumerate(edges):
        for v in e:
            inc_idx[fill[v]] = i
            fill[v] += 1
    return W, emat, inc_ptr, inc_idx


def _bits_to_set(bits: np.ndarray) -> list[int]:
    out = []
    for w, word in enumerate(bits.tolist()):
        while word:
            low = word & -word
            out.append((w << 6) + low.bit_length() - 1)
            word ^= low
    return out


def _set_to_bits(members: Iterable[int], W: int) -> np.ndarray:
    bits = np.zeros(W, dtype=np.uint64)
    for v in members:
        bits[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    return bits


def _run(H: Hypergraph, floor: int, budget: int, seed: int):
    """Search the folded problem for an independent set heavier than ``floor``.

    The greedy incumbent seeds the search when it already beats ``floor``.
    Returns (value, witness, nodes, completed); value is -1 when nothing
    above ``floor`` was found.
    """
    classes, qedges, weights = _fold(H)
    q = len(classes)
    if q == 0:
        return 0, (), 0, True
    W, emat, inc_ptr, inc_idx = _pack(q, H.r, qedges, weights)
    greedy = alpha_greedy(H, seed)
    start, start_set = floor, _set_to_bits((), W)
    if greedy.alpha > floor:
        cls_of = {v: i for i, c in enumerate(classes) for v in c}
        # greedy sets need not be class-closed; close them (closure stays independent)
        chosen = sorted({cls_of[v] for v in greedy.witness})
        start = int(sum(weights[c] for c in chosen))
        start_set = _set_to_bits(chosen, W)
    best, best_bits, nodes, done = _bbkernel.solve(
        q, W, H.r, weights, emat, inc_ptr, inc_idx, start, start_set, budget
    )
    if best <= floor:
        return -1, (), int(nodes), bool(done)
    members = sorted(v for c in _bits_to_set(best_bits) for v in classes[c])
    return int(best), tuple(members), int(nodes), bool(done)


def alpha_exact(H: Hypergraph, budget: int = DEFAULT_BUDGET, seed: int = 0) -> AlphaResult:
    """Exact alpha(H), or an inconclusive result carrying the best set found."""
    value, witness, nodes, done = _run(H, -1, budget, seed)
    if not done:
        return AlphaResult(value, witness, "exact-bb", INCONCLUSIVE, None, nodes)
    return AlphaResult(value, witness, "exact-bb", EXACT, value, nodes)


def alpha_below(H: Hypergraph, t: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> AlphaResult:
    """Decide whether alpha(H) < t.

    Searches only for independent sets of size >= t.  If the search
    completes without one the result is ``bounded`` with ``upper = t - 1``
    and ``alpha`` a greedy lower bound.  If one is found the result is a
    ``lower-bound`` of size >= t.
    """
    value, witness, nodes, done = _run(H, t - 1, budget, seed)
    if value >= t:
        return AlphaResult(value, witness, "exact-bb", LOWER_BOUND, None, nodes)
    if not done:
        g = alpha_greedy(H, seed)
        return AlphaResult(g.alpha, g.witness, "exact-bb", INCONCLUSIVE, None, nodes)
    g = alpha_greedy(H, seed)
    if g.alpha == t - 1:
        return AlphaResult(g.alpha, g.witness, "exact-bb", EXACT, t - 1, nodes)
    return AlphaResult(g.alpha, g.witness, "exact-bb", BOUNDED, t - 1, nodes)


def alpha_exhaustive(H: Hypergraph) -> AlphaResult:
    """Brute force over all 2^n vertex subsets (n <= 22)."""
    n = H.n
    if n > EXHAUSTIVE_MAX_N:
        raise HypergraphError(f"exhaustive search refuses n = {n} > {EXHAUSTIVE_MAX_N}")
    subsets = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for em in H.edge_masks:
        ok &= (subsets & em) != em
    sizes = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        sizes += (subsets >> v) & 1
    sizes[~ok] = -1
    best = int(np.argmax(sizes))
    witness = tuple(v for v in range(n) if best >> v & 1)
    return AlphaResult(len(witness), witness, "exhaustive", EXACT, len(witness))


def alpha_greedy(H: Hypergraph, seed: int = 0) -> AlphaResult:
    """Greedy independent set: scan vertices by increasing degree, add when safe.

    High-degree vertices are considered last; ties are broken by a seeded shuffle.
    """
    rng = random.Random(seed)
    order = list(range(H.n))
    rng.shuffle(order)
    order.sort(key=lambda v: len(H.incidence[v]))
    chosen: set[int] = set()
    for v in order:
        blocked = False
        for i in H.incidence[v]:
            if all(u == v or u in chosen for u in H.edges[i]):
                blocked = True
                break
        if not blocked:
            chosen.add(v)
    witness = tuple(sorted(chosen))
    return AlphaResult(len(witness), witness, "greedy-lower", LOWER_BOUND, None)

