"""Blowups of partial Steiner systems and the tau-witnesses they certify.

Vertex class ``V_i`` is the index range ``[i*d, (i+1)*d)``, so vertex ``v``
lies in class ``v // d``.  Edges are all r-sets inside one class plus, for
each base edge, every r-set taking one vertex from each of its classes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .hypercore import Hypergraph, HypergraphError, binom, codegree, write_hypergraph
from .indep import DEFAULT_BUDGET, AlphaResult, alpha_below, alpha_exact
from .steiner import SteinerSystem


@dataclass(frozen=True)
class BlowupSpec:
    system: SteinerSystem
    d: int
    augment_even_r: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise HypergraphError(f"class size d must be >= 1, got {self.d}")
        if self.augment_even_r and self.system.r % 2:
            raise HypergraphError(f"even-r augmentation requested for odd r = {self.system.r}")

    @property
    def m(self) -> int:
        return self.system.m

    @property
    def r(self) -> int:
        return self.system.r

    @property
    def n(self) -> int:
        return self.m * self.d


def vertex_class(v: int, d: int) -> int:
    return v // d


def expected_edge_count(spec: BlowupSpec) -> int:
    m, d, r = spec.m, spec.d, spec.r
    count = m * binom(d, r) + len(spec.system.base.edges) * d**r
    if spec.augment_even_r:
        count += binom(m, r // 2) * binom(d, 2) ** (r // 2)
    return count


def build_blowup(spec: BlowupSpec) -> Hypergraph:
    m, d, r = spec.m, spec.d, spec.r
    classes = [range(i * d, (i + 1) * d) for i in range(m)]
    edges = []
    for cls in classes:
        edges.extend(combinations(cls, r))
    for e in spec.system.base.edges:
        edges.extend(product(*(classes[i] for i in e)))
    if spec.augment_even_r:
        for picked in combinations(range(m), r // 2):
            pairs = [list(combinations(classes[i], 2)) for i in picked]
            for choice in product(*pairs):
                edges.append(tuple(v for pair in choice for v in pair))
    return Hypergraph(r, m * d, tuple(edges))


def blowup_text(spec: BlowupSpec, H: Hypergraph) -> str:
    meta = {
        "kind": "blowup",
        "m": spec.m,
        "d": spec.d,
        "steiner_seed": spec.system.seed,
        "augment": int(spec.augment_even_r),
    }
    return write_hypergraph(H, meta)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking max codegree = d and alpha(H) = (r-1) alpha(S).

    ``status`` is ``pass`` when both hold, ``inconclusive`` when an alpha is
    not exact, ``precondition`` when an identity fails while one of the
    listed preconditions is violated, and ``fail`` otherwise.
    """

    d: int
    r: int
    max_codegree: int
    alpha_S: AlphaResult
    alpha_H: AlphaResult
    codegree_holds: bool
    alpha_holds: bool
    violated_preconditions: tuple[str, ...]
    status: str


def check_blowup_identities(spec: BlowupSpec, budget: int = DEFAULT_BUDGET) -> IdentityReport:
    H = build_blowup(spec)
    r, d = spec.r, spec.d
    delta = codegree(H)
    aS = spec.system.alpha_S
    if not aS.is_exact:
        aS = alpha_exact(spec.system.base, budget)
    aH = alpha_exact(H, budget)
    violated = []
    if not spec.system.base.edges:
        violated.append("base system has no edges")
    if d < r - 1:
        violated.append(f"d = {d} < r - 1 = {r - 1}: a class cannot hold r - 1 independent vertices")
    if spec.augment_even_r:
        violated.append("augmented blowup: identities are stated for the plain construction")
    codegree_holds = delta == d
    alpha_holds = aS.is_exact and aH.is_exact and aH.alpha == (r - 1) * aS.alpha
    if not (aS.is_exact and aH.is_exact):
        status = "inconclusive"
    elif codegree_holds and alpha_holds:
        status = "pass"
    elif violated:
        status = "precondition"
    else:
        status = "fail"
    return IdentityReport(d, r, delta, aS, aH, codegree_holds, alpha_holds, tuple(violated), status)


@dataclass(frozen=True)
class TauWitness:
    """A hypergraph certifying T_{r-1}(n, t, r) <= max_codegree when valid.

    ``alpha`` is the exact independence number when it was computed, else
    None; ``alpha_upper`` is the proven upper bound that validity rests on.
    """

    n: int
    t: int
    r: int
    max_codegree: int
    alpha: int | None
    alpha_upper: int | None
    alpha_lower: int
    alpha_status: str
    tau_upper: Fraction
    valid: bool


def witness(H: Hypergraph, t: int, mode: str = "exact", budget: int = DEFAULT_BUDGET) -> TauWitness:
    """Build a TauWitness for ``H``.

    ``mode="exact"`` computes alpha(H); ``mode="certify"`` only decides
    alpha(H) < t, which is all validity needs and is far cheaper.
    """
    if mode == "exact":
        a = alpha_exact(H, budget)
    elif mode == "certify":
        a = alpha_below(H, t, budget)
    else:
        raise ValueError(f"unknown alpha mode {mode!r}")
    delta = codegree(H)
    tau = Fraction(delta, H.n - H.r + 1)
    exact_alpha = a.alpha if a.is_exact else None
    valid = a.upper is not None and a.upper < t
    return TauWitness(H.n, t, H.r, delta, exact_alpha, a.upper, a.alpha, a.status, tau, valid)


def witness_from_construction(
    spec: BlowupSpec, t: int, mode: str = "exact", budget: int = DEFAULT_BUDGET
) -> TauWitness:
    return witness(build_blowup(spec), t, mode, budget)


@dataclass(frozen=True)
class ConstructionPlan:
    t: int
    r: int
    c2: float
    m: int

    def d_for(self, n: int) -> int:
        """Class size for an n-vertex instance; n must be a multiple of m."""
        if n % self.m:
            raise HypergraphError(f"n = {n} is not a multiple of m = {self.m}")
        return n // self.m


def plan_construction(t: int, r: int, c2: float) -> ConstructionPlan:
    """Choose m = ceil(t^(r-1) / (c2 ln t)) base vertices for target t."""
    if t < 2:
        raise HypergraphError(f"need ln t > 0, got t = {t}")
    if c2 <= 0:
        raise HypergraphError(f"c2 must be positive, got {c2}")
    m = math.ceil(t ** (r - 1) / (c2 * math.log(t)))
    if m < r:
        raise HypergraphError(f"m = {m} < r = {r}: construction undefined for t = {t}, c2 = {c2}")
    return ConstructionPlan(t, r, c2, m)
