import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from onecut.closedform import (EnsembleSpec, asymptotic_cov, correlation,
                               correlation_symmetric, correlation_zero_edge,
                               covariance_table, gaussian_cov, gaussian_moment,
                               jacobi_cov, jacobi_edges, jacobi_symmetric_cov, narayana,
                               shift_cov, symmetric_cov, wishart_cov, wishart_moment,
                               zero_edge_cov)
from onecut.genfun import SupportInterval, expand_F

from reference_tables import TABLE_GAUSSIAN, TABLE_JACOBI, wishart_poly


def test_gaussian_moments_are_catalan():
    assert [gaussian_moment(k) for k in range(8)] == [1, 0, 1, 0, 2, 0, 5, 0]
    assert gaussian_moment(7) == 0


def test_gaussian_cov_table():
    for k in range(1, 9):
        for l in range(1, 9):
            assert gaussian_cov(k, l) == TABLE_GAUSSIAN[k - 1][l - 1]
    assert gaussian_cov(1, 2) == 0
    assert gaussian_cov(5, 0) == 0


def test_symmetric_cov_scaling():
    assert symmetric_cov(2, 3, 5) == gaussian_cov(3, 5)
    assert symmetric_cov(1, 1, 1) == F(1, 2)
    assert symmetric_cov(1, 1, 2) == 0
    assert isinstance(symmetric_cov(1.0, 1, 1), float)


def test_shift_cov_on_centered_support_recovers_table():
    s = SupportInterval(-2, 2)
    for k in range(1, 9):
        for l in range(1, 9):
            assert shift_cov(s, k, l) == TABLE_GAUSSIAN[k - 1][l - 1]


def test_shift_cov_examples():
    assert shift_cov(SupportInterval(0, 4), 2, 2) == 36
    assert shift_cov(SupportInterval(0, 1), 1, 1) == F(1, 8)
    # m = 0 must be regular and match the symmetric formula
    assert shift_cov(SupportInterval(-3, 3), 2, 4) == symmetric_cov(3, 2, 4)


def test_zero_edge_cov_values():
    assert zero_edge_cov(2, 1, 1) == 2
    assert zero_edge_cov(2, 2, 2) == 36
    assert zero_edge_cov(2, 3, 0) == 0
    for k in range(1, 6):
        for l in range(1, 6):
            assert zero_edge_cov(F(1, 2), k, l) == TABLE_JACOBI[k - 1][l - 1]


def test_zero_edge_log_path_consistent():
    exact = float(zero_edge_cov(2, 60, 58))
    logged = zero_edge_cov(2.0, 60, 58)
    assert logged == pytest.approx(exact, rel=1e-12)


def test_narayana_rows():
    assert [narayana(3, p) for p in (1, 2, 3)] == [1, 3, 1]
    assert sum(narayana(4, p) for p in range(1, 5)) == 14  # Catalan row sum


def test_wishart_moments_match_spectral_density():
    # frozen from quadrature of the closed density (mean c convention)
    assert [wishart_moment(2, k) for k in range(4)] == [1, 2, 6, 22]
    assert [wishart_moment(3, k) for k in range(4)] == [1, 3, 12, 57]
    assert wishart_moment(1, 3) == 5  # Catalan at the square case
    assert wishart_moment(F(5, 2), 2) == F(5, 2) + F(25, 4)
    with pytest.raises(ValueError):
        wishart_moment(0.5, 2)


def test_wishart_cov_polynomials():
    for c in (1, 2, 3, 7):
        for k in range(1, 4):
            for l in range(1, 4):
                assert wishart_cov(F(c), k, l) == wishart_poly(k, l, c)


def test_wishart_cov_square_case_is_zero_edge():
    for k in range(1, 7):
        for l in range(1, 7):
            assert wishart_cov(1, k, l) == zero_edge_cov(2, k, l)
    assert wishart_cov(2, 4, 0) == 0


def test_jacobi_edges_basics():
    s = jacobi_edges(0.0, 0.0)
    assert (s.a, s.b) == (0.0, 1.0)
    rng = random.Random(3)
    for _ in range(50):
        s = jacobi_edges(rng.uniform(0, 10), rng.uniform(0, 10))
        assert 0.0 <= s.a < s.b <= 1.0
    with pytest.raises(ValueError):
        jacobi_edges(-0.1, 0.0)


def test_jacobi_edges_satisfy_equilibrium_conditions():
    # oracle: with soft edges, the one-cut equilibrium conditions read
    #   int V'(y) sqrt((b-y)/(y-a)) dy = -pi   (lower edge)
    #   int V'(y) sqrt((y-a)/(b-y)) dy = +pi   (upper edge)
    # verified on the Gaussian first, then applied to the Jacobi formula.
    def conditions(vp, a, b, n=20000):
        k = np.arange(1, n + 1)
        th = (2 * k - 1) * math.pi / (2 * n)
        y = (a + b) / 2 + (b - a) / 2 * np.cos(th)
        lower = np.sum(vp(y) * (b - a) / 2 * (1 - np.cos(th))) * math.pi / n
        upper = np.sum(vp(y) * (b - a) / 2 * (1 + np.cos(th))) * math.pi / n
        return lower, upper

    lo, up = conditions(lambda y: y / 2, -2.0, 2.0)
    assert lo == pytest.approx(-math.pi, abs=1e-8)
    assert up == pytest.approx(math.pi, abs=1e-8)

    g1, g2 = 1.0, 2.0
    s = jacobi_edges(g1, g2)
    lo, up = conditions(lambda y: -g1 / (2 * y) + g2 / (2 * (1 - y)), s.a, s.b)
    assert lo == pytest.approx(-math.pi, abs=1e-6)
    assert up == pytest.approx(math.pi, abs=1e-6)
    # and they pin the edges: perturbing an edge breaks them
    lo_bad, up_bad = conditions(lambda y: -g1 / (2 * y) + g2 / (2 * (1 - y)),
                                s.a * 1.1, s.b)
    assert abs(lo_bad + math.pi) > 1e-3 or abs(up_bad - math.pi) > 1e-3


def test_jacobi_symmetric_table():
    for k in range(1, 6):
        for l in range(1, 6):
            assert jacobi_symmetric_cov(k, l) == TABLE_JACOBI[k - 1][l - 1]
    assert jacobi_symmetric_cov(3, 0) == 0


def test_jacobi_cov_gamma_zero_matches_exact_table():
    for k in range(1, 6):
        for l in range(1, 6):
            assert jacobi_cov(0.0, 0.0, k, l) == \
                pytest.approx(float(jacobi_symmetric_cov(k, l)), rel=1e-12)


def test_jacobi_cov_equals_shift_formula():
    rng = random.Random(11)
    for _ in range(10):
        g1, g2 = rng.uniform(0, 6), rng.uniform(0, 6)
        s = jacobi_edges(g1, g2)
        for k, l in ((1, 1), (2, 3), (4, 2), (5, 5)):
            assert jacobi_cov(g1, g2, k, l) == \
                pytest.approx(shift_cov(s, k, l), rel=1e-12)


def test_triple_agreement_through_order_ten():
    # closed form, shift formula and series expansion give the same table
    g_series = expand_F(SupportInterval(-2, 2), 10)
    for k in range(1, 11):
        for l in range(1, 11):
            assert gaussian_cov(k, l) == shift_cov(SupportInterval(-2, 2), k, l) \
                == g_series.value(k, l)
    w_series = expand_F(SupportInterval(0, 4), 10)  # wishart c = 1
    s2 = math.sqrt(2.0)
    wsup = SupportInterval((1 - s2) ** 2, (1 + s2) ** 2)
    for k in range(1, 11):
        for l in range(1, 11):
            assert wishart_cov(F(1), k, l) == w_series.value(k, l)
            ref = wishart_cov(2.0, k, l)
            assert shift_cov(wsup, k, l) == pytest.approx(ref, rel=1e-12)


def test_correlation_values():
    t01 = covariance_table(EnsembleSpec.jacobi(0.0, 0.0), 5)
    assert correlation(t01, 1, 2) == pytest.approx(2 * math.sqrt(2) / 3, rel=1e-14)
    assert correlation(t01, 3, 3) == pytest.approx(1.0, rel=1e-14)
    tg = covariance_table(EnsembleSpec.gaussian(), 5)
    assert correlation(tg, 1, 3) == pytest.approx(math.sqrt(3) / 2, rel=1e-14)
    assert correlation(tg, 1, 2) == 0.0
    assert correlation_zero_edge(1, 2) == pytest.approx(2 * math.sqrt(2) / 3)
    assert correlation_symmetric(1, 2) == 0.0
    with pytest.raises(ValueError):
        correlation(tg, 0, 1)


def test_correlation_invariant_under_support_scaling():
    base = covariance_table(SupportInterval(F(1, 2), F(7, 2)), 5)
    for t in (F(3), F(1, 5)):
        scaled = covariance_table(SupportInterval(t / 2, 7 * t / 2), 5)
        for k, l in ((1, 2), (2, 5), (3, 4)):
            assert correlation(scaled, k, l) == \
                pytest.approx(correlation(base, k, l), rel=1e-12)


def test_asymptotic_ratio_approaches_one():
    ratios = [float(zero_edge_cov(2, k, k)) / asymptotic_cov(2.0, k, k)
              for k in range(5, 61, 5)]
    assert 0.97 <= ratios[7] <= 1.03  # k = 40
    assert all(r2 >= r1 for r1, r2 in zip(ratios, ratios[1:]))  # monotone in k
    # at k = l the form reduces to (2L)^(2k) / (2 pi)
    assert asymptotic_cov(2.0, 12, 12) == pytest.approx(4.0 ** 24 / (2 * math.pi), rel=1e-12)


def test_ensemble_spec_validation_and_dispatch():
    with pytest.raises(ValueError):
        EnsembleSpec.wishart(0.5)
    with pytest.raises(ValueError):
        EnsembleSpec.jacobi(-1.0, 0.0)
    with pytest.raises(ValueError):
        EnsembleSpec.gaussian(beta=0.0)
    ens = EnsembleSpec.wishart(F(2), beta=2.0)
    assert ens.cov(2, 2) == wishart_cov(F(2), 2, 2)
    assert ens.moment(2) == 6
    g = EnsembleSpec.gaussian()
    assert g.support().is_symmetric
    cust = EnsembleSpec.custom(SupportInterval(0, 3), lambda y: 0.5)
    assert cust.cov(1, 1) == shift_cov(SupportInterval(0, 3), 1, 1)
    with pytest.raises(ValueError):
        EnsembleSpec.jacobi(0.0, 0.0).moment(2)


def test_covariance_table_provenances():
    t = covariance_table(SupportInterval(-2, 2), 4)
    assert t.provenance == "shift-formula" and t.exact
    t2 = covariance_table(EnsembleSpec.jacobi(1.0, 0.5), 4)
    assert t2.provenance == "closed-form" and not t2.exact
    t2.check_invariants()
