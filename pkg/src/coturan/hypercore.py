"""Uniform hypergraphs on dense integer vertex sets.

A :class:`Hypergraph` is an immutable r-uniform hypergraph on vertices
``0..n-1`` whose edges are stored as strictly ascending r-tuples in
lexicographic order.  Degree queries are defined by an edge scan; the
:func:`ell_degree_counts` index is an accelerated path that must agree
with it.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class HypergraphError(ValueError):
    """Raised for structurally invalid hypergraphs or queries."""


class FormatError(HypergraphError):
    """Malformed hypergraph text; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Hypergraph:
    r: int
    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.r < 2:
            raise HypergraphError(f"uniformity must be >= 2, got {self.r}")
        if self.n < 0:
            raise HypergraphError(f"vertex count must be >= 0, got {self.n}")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != self.r:
                raise HypergraphError(f"edge {tuple(e)} does not have {self.r} vertices")
            if len(set(t)) != self.r:
                raise HypergraphError(f"edge {tuple(e)} repeats a vertex")
            if t[0] < 0 or t[-1] >= self.n:
                raise HypergraphError(f"edge {tuple(e)} has a vertex outside 0..{self.n - 1}")
            if t in canon:
                raise HypergraphError(f"duplicate edge {t}")
            canon.add(t)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        return cls(r, n, tuple(tuple(e) for e in edges))

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        """K_n^r: every r-subset of ``range(n)`` is an edge."""
        return cls(r, n, tuple(combinations(range(n), r)))

    @classmethod
    def empty(cls, n: int, r: int) -> "Hypergraph":
        return cls(r, n, ())

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        """Edges as Python-int bitmasks (bit v set iff v in edge)."""
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def link(self, v: int) -> frozenset:
        """The (r-1)-sets completing ``v`` to an edge."""
        return frozenset(tuple(u for u in self.edges[i] if u != v) for i in self.incidence[v])


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def _check_vertex_set(H: Hypergraph, S: Iterable[int]) -> tuple[int, ...]:
    members = tuple(sorted(set(int(v) for v in S)))
    for v in members:
        if v < 0 or v >= H.n:
            raise HypergraphError(f"vertex {v} outside 0..{H.n - 1}")
    return members


def degree(H: Hypergraph, S: Iterable[int]) -> int:
    """Number of edges of ``H`` containing the vertex set ``S``."""
    members = _check_vertex_set(H, S)
    if len(members) > H.r:
        raise HypergraphError(f"|S| = {len(members)} exceeds r = {H.r}")
    target = set(members)
    return sum(1 for e in H.edges if target.issubset(e))


def ell_degree_counts(H: Hypergraph, ell: int) -> Mapping[tuple[int, ...], int]:
    """Degree of every ell-set covered by at least one edge.

    Built once per (H, ell) and cached on the instance; sets absent from
    the mapping have degree zero.
    """
    _check_ell(H, ell)
    cached = H._index.get(ell)
    if cached is None:
        cached = Counter()
        for e in H.edges:
            cached.update(combinations(e, ell))
        H._index[ell] = cached
    return cached


def _check_ell(H: Hypergraph, ell: int) -> None:
    if not 1 <= ell < H.r:
        raise HypergraphError(f"ell must lie in [1, {H.r - 1}], got {ell}")
    if H.n < ell:
        raise HypergraphError(f"need n >= ell, got n = {H.n}, ell = {ell}")


def max_ell_degree(H: Hypergraph, ell: int) -> int:
    """Delta_ell(H): the largest degree of an ell-set."""
    counts = ell_degree_counts(H, ell)
    return max(counts.values(), default=0)


def min_ell_degree(H: Hypergraph, ell: int) -> int:
    """delta_ell(H): the smallest degree of an ell-set."""
    counts = ell_degree_counts(H, ell)
    if len(counts) < binom(H.n, ell):
        return 0
    return min(counts.values())


def codegree(H: Hypergraph) -> int:
    """Maximum (r-1)-degree."""
    return max_ell_degree(H, H.r - 1)


def induced(H: Hypergraph, W: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced on ``W``, relabelled 0..|W|-1 in increasing order."""
    members = _check_vertex_set(H, W)
    relabel = {v: i for i, v in enumerate(members)}
    edges = [tuple(relabel[v] for v in e) for e in H.edges if all(v in relabel for v in e)]
    return Hypergraph(H.r, len(members), tuple(edges))


def relabel(H: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Image of ``H`` under the vertex bijection ``v -> perm[v]``."""
    if sorted(perm) != list(range(H.n)):
        raise HypergraphError("perm must be a permutation of range(n)")
    return Hypergraph(H.r, H.n, tuple(tuple(perm[v] for v in e) for e in H.edges))


def write_hypergraph(H: Hypergraph, meta: Mapping[str, object] | None = None) -> str:
    lines = [f"# {k}={v}" for k, v in (meta or {}).items()]
    lines.append(f"{H.r} {H.n} {len(H.edges)}")
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    out = []
    for tok in tokens:
        # int() would accept '+3', '٣' and '1_0'; the format is plain base-10
        if not tok.isascii() or not tok.isdigit():
            raise FormatError(lineno, f"non-integer token {tok!r}")
        out.append(int(tok))
    return out


def read_document(text: str) -> tuple[Hypergraph, dict[str, str]]:
    """Parse hypergraph text, returning the hypergraph and ``# key=value`` metadata."""
    meta: dict[str, str] = {}
    header = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, _, v = body.partition("=")
                meta[k.strip()] = v.strip()
            continue
        if not line:
            continue
        tokens = line.split()
        values = _ints(tokens, lineno)
        if header is None:
            if len(values) != 3:
                raise FormatError(lineno, "header must be 'r n e'")
            r, n, e = values
            if r < 2:
                raise FormatError(lineno, f"uniformity must be >= 2, got {r}")
            header = (r, n, e)
            continue
        r, n, e = header
        if len(edges) >= e:
            raise FormatError(lineno, f"more than the declared {e} edges")
        if len(values) != r:
            raise FormatError(lineno, f"edge has {len(values)} vertices, expected {r}")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise FormatError(lineno, "edge vertices must be strictly increasing")
        if values[-1] >= n:
            raise FormatError(lineno, f"vertex {values[-1]} out of range for n = {n}")
        t = tuple(values)
        if t in seen:
            raise FormatError(lineno, f"duplicate edge {t}")
        seen.add(t)
        edges.append(t)
    if header is None:
        raise FormatError(lineno + 1, "missing header line 'r n e'")
    if len(edges) != header[2]:
        raise FormatError(lineno + 1, f"declared {header[2]} edges, found {len(edges)}")
    return Hypergraph(header[0], header[1], tuple(edges)), meta


def read_hypergraph(text: str) -> Hypergraph:
    return read_document(text)[0]


def fano_plane() -> Hypergraph:
    """The Fano plane as a 3-graph on 0..6 (lines {i, i+1, i+3} mod 7)."""
    return Hypergraph(3, 7, tuple(tuple(sorted({i, (i + 1) % 7, (i + 3) % 7})) for i in range(7)))
