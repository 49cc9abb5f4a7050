"""Compiled branch-and-bound core for weighted hypergraph independence.

Vertex sets are bitsets of ``W`` uint64 words.  The search state is
(chosen C, undecided P); every vertex outside C | P is excluded.  An edge is
*alive* when it avoids all excluded vertices, and its *part* is ``edge & P``.
After propagation no alive part has size one, so C is always independent.
"""
import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, inline="always")
def _lowbit_index(x):
    return _popcount((x & (~x + _ONE)) - _ONE)


@njit(cache=True)
def _include(v, C, P, edges, inc_ptr, inc_idx, W):
    """Add v to C and drop every vertex that would complete an edge.

    Returns False when v is no longer available.
    """
    wv = v >> 6
    bit = _ONE << np.uint64(v & 63)
    if P[wv] & bit == _ZERO:
        return False
    C[wv] |= bit
    P[wv] &= ~bit
    for k in range(inc_ptr[v], inc_ptr[v + 1]):
        e = inc_idx[k]
        cnt = 0
        last_w = 0
        last_b = _ZERO
        for w in range(W):
            rest = edges[e, w] & ~C[w]
            if rest != _ZERO:
                cnt += _popcount(rest)
                last_w = w
                last_b = rest
        if cnt == 1:
            P[last_w] &= ~last_b
    return True


@njit(cache=True)
def _weight_of(S, weights, W):
    total = 0
    for w in range(W):
        x = S[w]
        while x != _ZERO:
            b = _lowbit_index(x)
            total += weights[(w << 6) + b]
            x &= x - _ONE
    return total


@njit(cache=True)
def solve(n, W, r, weights, edges, inc_ptr, inc_idx, init_best, init_set, budget):
    """Maximum-weight independent set by depth-first branch and bound.

    Returns (best, best_set, nodes, completed).  ``best`` never drops below
    ``init_best``; when the search completes, no independent set heavier
    than ``best`` exists.
    """
    E = edges.shape[0]
    cap = n * r + 2
    stC = np.zeros((cap, W), dtype=np.uint64)
    stP = np.zeros((cap, W), dtype=np.uint64)
    stw = np.zeros(cap, dtype=np.int64)
    best = init_best
    best_set = init_set.copy()
    for w in range(W):
        lo = w << 6
        hi = min(n, lo + 64)
        word = _ZERO
        for v in range(lo, hi):
            word |= _ONE << np.uint64(v - lo)
        stP[0, w] = word
    sp = 1
    nodes = 0
    alive = np.empty(E, dtype=np.int64)
    asize = np.empty(E, dtype=np.int64)
    used = np.zeros(W, dtype=np.uint64)
    C = np.zeros(W, dtype=np.uint64)
    P = np.zeros(W, dtype=np.uint64)
    vs = np.empty(r, dtype=np.int64)
    while sp > 0:
        sp -= 1
        if nodes >= budget:
            return best, best_set, nodes, False
        nodes += 1
        for w in range(W):
            C[w] = stC[sp, w]
            P[w] = stP[sp, w]
        wc = stw[sp]
        wp = _weight_of(P, weights, W)
        if wc + wp <= best:
            continue
        na = 0
        for e in range(E):
            dead = False
            size = 0
            for w in range(W):
                if edges[e, w] & ~(C[w] | P[w]) != _ZERO:
                    dead = True
                    break
                size += _popcount(edges[e, w] & P[w])
            if not dead:
                alive[na] = e
                asize[na] = size
                na += 1
        if na == 0:
            best = wc + wp
            for w in range(W):
                best_set[w] = C[w] | P[w]
            continue
        # disjoint alive parts, smallest first; each forces out its lightest vertex
        for w in range(W):
            used[w] = _ZERO
        reduction = 0
        for s in range(1, r + 1):
            for k in range(na):
                if asize[k] != s:
                    continue
                e = alive[k]
                clash = False
                for w in range(W):
                    if edges[e, w] & P[w] & used[w] != _ZERO:
                        clash = True
                        break
                if clash:
                    continue
                lightest = -1
                for w in range(W):
                    x = edges[e, w] & P[w]
                    used[w] |= x
                    while x != _ZERO:
                        v = (w << 6) + _lowbit_index(x)
                        if lightest < 0 or weights[v] < lightest:
                            lightest = weights[v]
                        x &= x - _ONE
                reduction += lightest
        if wc + wp - reduction <= best:
            continue
        # branch on a smallest part, ties to the lowest vertex
        pick = -1
        pick_size = r + 1
        pick_low = n
        for k in range(na):
            e = alive[k]
            low = n
            for w in range(W):
                x = edges[e, w] & P[w]
                if x != _ZERO:
                    low = (w << 6) + _lowbit_index(x)
                    break
            if asize[k] < pick_size or (asize[k] == pick_size and low < pick_low):
                pick = e
                pick_size = asize[k]
                pick_low = low
        nv = 0
        for w in range(W):
            x = edges[pick, w] & P[w]
            while x != _ZERO:
                vs[nv] = (w << 6) + _lowbit_index(x)
                nv += 1
                x &= x - _ONE
        # child i: include vs[:i], exclude vs[i]; pushed in reverse so child 0 runs first
        for i in range(nv - 1, -1, -1):
            for w in range(W):
                stC[sp, w] = C[w]
                stP[sp, w] = P[w]
            ok = True
            add = 0
            for j in range(i):
                if not _include(vs[j], stC[sp], stP[sp], edges, inc_ptr, inc_idx, W):
                    ok = False
                    break
                add += weights[vs[j]]
            if not ok:
                continue
            v = vs[i]
            stP[sp, v >> 6] &= ~(_ONE << np.uint64(v & 63))
            stw[sp] = wc + add
            sp += 1
    return best, best_set, nodes, True
