import math
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coturan.blowup import BlowupSpec, build_blowup
from coturan.hypercore import Hypergraph, HypergraphError, codegree, fano_plane, induced
from coturan.sampling import (
    SubsampleFailure,
    SubsampleParams,
    acceptance_rate,
    accepts,
    delta_regime,
    empirical_b1,
    sparse_alpha_bound,
    sparse_codegree_window,
    lemma_m_conditions,
    min_lemma_m,
    regime_m,
    subsample,
)
from coturan.steiner import SteinerSystem, generate_steiner


def decimal_conditions(m, r, eps):
    """Independent evaluation of the two size conditions with 50-digit decimals."""
    with localcontext() as ctx:
        ctx.prec = 50
        e = Decimal(eps)
        if m * e < 2 * (r - 1):
            return False
        return Decimal(math.comb(m, r - 1)) * (-(e * e) * (m - r + 1) / 12).exp() <= Decimal(1) / 2


def scan_min_m(r, eps):
    m = r
    while not decimal_conditions(m, r, eps):
        m += 1
    return m


def test_small_m_fail():
    assert not lemma_m_conditions(7, 3, 0.5)  # 7 < 2 * 2 / 0.5
    assert not lemma_m_conditions(8, 3, 0.5)  # 28 e^{-1/8} > 1/2


@pytest.mark.parametrize("r, eps, expected", [(3, 0.5, 620), (3, 0.9, 151), (4, 0.5, 936)])
def test_min_lemma_m_regressions(r, eps, expected):
    assert scan_min_m(r, eps) == expected
    m = min_lemma_m(r, eps)
    assert m == expected
    assert lemma_m_conditions(m, r, eps) and not lemma_m_conditions(m - 1, r, eps)


def test_min_lemma_m_nonincreasing_in_epsilon():
    ms = [min_lemma_m(3, e / 20) for e in range(2, 20)]
    assert ms == sorted(ms, reverse=True)


def test_min_lemma_m_domain():
    for eps in (0, 1, 1.5, -0.2):
        with pytest.raises(ValueError):
            min_lemma_m(3, eps)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 100), st.sampled_from([3, 4, 5]), st.floats(0.3, 3.0))
def test_log_space_agrees_with_decimal(m, r, eps):
    if m < r:
        return
    assert lemma_m_conditions(m, r, eps) == decimal_conditions(m, r, eps)


def test_lemma_conditions_reject_m_below_r():
    with pytest.raises(ValueError):
        lemma_m_conditions(2, 3, 0.5)


def test_subsample_edgeless():
    H = Hypergraph.empty(40, 3)
    res = subsample(H, SubsampleParams(1.5, 30, seed=1), check_conditions=False)
    assert res.trials == 1 and res.sub.n == 30 and not res.sub.edges


def test_subsample_complete():
    n, m, eps = 30, 20, 0.5
    H = Hypergraph.complete(n, 3)
    res = subsample(H, SubsampleParams(eps, m, seed=2), check_conditions=False)
    assert res.trials == 1
    assert res.density_sub == Fraction(m - 2, m)
    assert res.density_host == Fraction(n - 2, n)


def test_subsample_is_induced_and_checked():
    S = generate_steiner(12, 3, 1, seed=7)
    H = build_blowup(BlowupSpec(S, 14))
    m = min_lemma_m(3, 0.9)
    res = subsample(H, SubsampleParams(0.9, m, seed=3))
    assert res.sub == induced(H, res.vertices)
    assert len(res.vertices) == m
    assert Fraction(codegree(res.sub), m) <= Fraction(codegree(H), H.n) + Fraction(0.9)
    again = subsample(H, SubsampleParams(0.9, m, seed=3))
    assert again == res


def test_subsample_preconditions():
    F = fano_plane()
    with pytest.raises(HypergraphError):
        subsample(F, SubsampleParams(0.5, 8), check_conditions=False)
    with pytest.raises(ValueError):
        subsample(F, SubsampleParams(0.5, 5))


def test_subsample_failure_is_explicit():
    # tiny epsilon on a dense host with a sparse-looking sample cannot be met reliably
    H = build_blowup(BlowupSpec(SteinerSystem.from_hypergraph(fano_plane()), 3))
    with pytest.raises(SubsampleFailure):
        subsample(H, SubsampleParams(1e-9, 6, max_trials=3, seed=0), check_conditions=False)


def test_params_validation():
    with pytest.raises(ValueError):
        SubsampleParams(0, 5)
    with pytest.raises(ValueError):
        SubsampleParams(0.5, 5, max_trials=0)


def test_accepts_and_rate_are_consistent():
    H = build_blowup(BlowupSpec(SteinerSystem.from_hypergraph(fano_plane()), 3))
    ok, host, sub = accepts(H, range(21), 0.0)
    assert ok and host == sub == Fraction(3, 21)
    assert acceptance_rate(H, 21, 0.0, 5, seed=0) == 1.0


def test_delta_regime():
    # 24 * 2 * ln(302) is about 274, far above 1/0.24^2
    assert not delta_regime(0.24, 3)
    assert not delta_regime(1e-29, 3)
    assert delta_regime(1e-31, 3)
    with pytest.raises(ValueError):
        delta_regime(0.25, 3)


def test_delta_regime_implied_m_meets_lemma():
    delta = 1e-31
    m = regime_m(delta)
    assert 10**123 < m < 10**125  # delta is the float nearest 1e-31
    assert lemma_m_conditions(m, 3, delta)


def test_first_regime_condition_monotone():
    import mpmath

    def first(d):
        with mpmath.workdps(60):
            d = mpmath.mpf(d)
            return 24 * 2 * mpmath.log(mpmath.ceil(1 / d**4)) <= 1 / d**2

    passing = [first(10.0 ** -(k / 4)) for k in range(4, 60)]
    assert passing == sorted(passing)


def test_sparse_codegree_window_and_linearity():
    n = 10.0**12
    window = sparse_codegree_window(n, 3)
    assert window == pytest.approx(n / math.log(n) ** 12)
    d = window / 2
    assert sparse_alpha_bound(n, d, 3, 2.0) == pytest.approx(2 * sparse_alpha_bound(n, d, 3, 1.0), rel=1e-15)
    with pytest.raises(ValueError, match="window"):
        sparse_alpha_bound(n, window * 2, 3, 1.0)
    with pytest.raises(ValueError):
        sparse_alpha_bound(1000, 1, 3, 1.0)  # window < 1 at this size


def test_empirical_b1():
    assert empirical_b1(8, 21, 3, 3) == pytest.approx(8 / math.sqrt(7 * math.log(7)))
    with pytest.raises(ValueError):
        empirical_b1(3, 5, 5, 3)
