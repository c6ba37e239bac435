import json
import math

import numpy as np
import pytest

from onecut.closedform import EnsembleSpec
from onecut.errors import ConvergenceError
from onecut.genfun import SupportInterval
from onecut.mcsim import (MCConfig, chi_sample, correlation_comparison,
                          covariance_comparison, estimate, gamma_sample, sample_hermite,
                          sample_jacobi_mcmc, sample_laguerre, tridiag_eigen)


def _sturm_count(d, e, x):
    # number of eigenvalues below x via the Sturm sequence of T - x I
    count = 0
    q = d[0] - x
    if q < 0:
        count += 1
    for i in range(1, len(d)):
        q = d[i] - x - (e[i - 1] ** 2) / (q if q != 0 else 1e-300)
        if q < 0:
            count += 1
    return count


def _bisection_eigenvalues(d, e):
    # independent characteristic-polynomial (Sturm bisection) eigensolver
    n = len(d)
    radius = np.max(np.abs(d)) + 2 * np.max(np.abs(e)) if n > 1 else abs(d[0])
    out = np.empty(n)
    for k in range(n):
        lo, hi = -radius - 1, radius + 1
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if _sturm_count(d, e, mid) <= k:
                lo = mid
            else:
                hi = mid
        out[k] = 0.5 * (lo + hi)
    return out


def test_tridiag_eigen_2x2_analytic():
    assert tridiag_eigen([2.0, 2.0], [1.0]) == pytest.approx([1.0, 3.0])


def test_tridiag_eigen_toeplitz():
    vals = tridiag_eigen(np.zeros(4), np.ones(3))
    expected = sorted(2 * math.cos(k * math.pi / 5) for k in range(1, 5))
    assert vals == pytest.approx(expected, abs=1e-12)
    # verify through the characteristic-polynomial recurrence p_n(x)
    for x in vals:
        p_prev, p = 1.0, -x
        for _ in range(3):
            p_prev, p = p, -x * p - p_prev
        assert abs(p) < 1e-10


def test_tridiag_eigen_trace_preserved():
    rng = np.random.default_rng(5)
    d = rng.standard_normal(40)
    e = rng.standard_normal(39)
    vals = tridiag_eigen(d, e)
    scale = np.abs(vals).max()
    assert vals.sum() == pytest.approx(d.sum(), abs=1e-10 * scale)


def test_tridiag_eigen_matches_bisection_oracle():
    rng = np.random.default_rng(17)
    for _ in range(20):
        n = int(rng.integers(2, 13))
        d = rng.standard_normal(n)
        e = rng.standard_normal(n - 1)
        ql = tridiag_eigen(d, e)
        bis = _bisection_eigenvalues(d, e)
        assert np.max(np.abs(ql - bis)) < 1e-10 * max(1.0, np.abs(bis).max())


def test_tridiag_eigen_shape_validation():
    with pytest.raises(ValueError):
        tridiag_eigen([1.0, 2.0], [1.0, 1.0])


def test_chi_and_gamma_sampler_moments():
    rng = np.random.default_rng(42)
    n = 200_000
    sq = chi_sample(rng, np.full(n, 3.7)) ** 2
    assert sq.mean() == pytest.approx(3.7, abs=5 * math.sqrt(2 * 3.7 / n))
    g = gamma_sample(rng, np.full(n, 0.4))
    assert g.mean() == pytest.approx(0.4, abs=5 * math.sqrt(0.4 / n))
    assert g.var() == pytest.approx(0.4, rel=0.05)
    with pytest.raises(ValueError):
        gamma_sample(rng, np.array([0.0]))


def test_gamma_sampler_is_stream_deterministic():
    a = gamma_sample(np.random.default_rng(9), np.linspace(0.3, 8.0, 64))
    b = gamma_sample(np.random.default_rng(9), np.linspace(0.3, 8.0, 64))
    assert np.array_equal(a, b)


def test_sample_hermite_contract():
    rng = np.random.default_rng(1)
    lam = sample_hermite(50, 2.0, rng)
    assert lam.shape == (50,) and np.all(np.diff(lam) >= 0)
    means = np.array([sample_hermite(50, 1.0, np.random.default_rng(i))
                      for i in range(400)])
    m1 = (means.mean(axis=1)).mean()
    m2 = (means ** 2).mean()
    se1 = (means.mean(axis=1)).std() / 20
    se2 = (means ** 2).mean(axis=1).std() / 20
    assert abs(m1 - 0.0) < 5 * se1
    assert abs(m2 - 1.0) < 5 * se2 + 2 / 50  # finite-N bias allowance


def test_sample_laguerre_contract():
    lam = sample_laguerre(50, 1.0, 2.0, np.random.default_rng(2))
    assert np.all(lam >= 0.0)
    first = np.array([sample_laguerre(50, 1.0, 1.0, np.random.default_rng(i)).mean()
                      for i in range(400)])
    assert abs(first.mean() - 1.0) < 5 * first.std() / 20
    second = np.array([(sample_laguerre(50, 2.0, 1.0, np.random.default_rng(i)) ** 2).mean()
                       for i in range(400)])
    # limiting second moment of the c = 2 spectral law is c + c^2 = 6
    assert abs(second.mean() - 6.0) < 5 * second.std() / 20 + 12 / 50
    with pytest.raises(ValueError):
        sample_laguerre(50, 0.9, 1.0, np.random.default_rng(0))


def test_sample_jacobi_mcmc_contract():
    lam = sample_jacobi_mcmc(24, 0.0, 0.0, 2.0, np.random.default_rng(3))
    assert lam.shape == (24,) and lam.min() > 0.0 and lam.max() < 1.0
    firsts = []
    seconds = []
    for i in range(60):
        lam = sample_jacobi_mcmc(24, 0.0, 0.0, 2.0, np.random.default_rng(100 + i))
        firsts.append(lam.mean())
        seconds.append((lam ** 2).mean())
    f, s = np.array(firsts), np.array(seconds)
    assert abs(f.mean() - 0.5) < 5 * f.std() / math.sqrt(60) + 0.01
    assert abs(s.mean() - 0.375) < 5 * s.std() / math.sqrt(60) + 0.02


def test_estimate_requires_sane_config():
    ens = EnsembleSpec.gaussian()
    with pytest.raises(ValueError):
        MCConfig(ensemble=ens, N=50, samples=1, seed=0)
    with pytest.raises(ValueError):
        MCConfig(ensemble=ens, N=1, samples=10, seed=0)
    with pytest.raises(ValueError):
        MCConfig(ensemble=ens, N=10, samples=10, seed=0, thin=0)
    with pytest.raises(ValueError):
        estimate(MCConfig(ensemble=EnsembleSpec.custom(
            support=SupportInterval(0, 1), v_prime=lambda y: 0.0),
            N=10, samples=10, seed=0))


def test_estimate_deterministic_and_worker_invariant():
    ens = EnsembleSpec.gaussian(beta=2.0)
    cfg = MCConfig(ensemble=ens, N=16, samples=300, seed=77, workers=2, kmax=3)
    a = estimate(cfg).to_dict()
    b = estimate(cfg).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    # independent-draw ensembles do not even depend on the worker count
    c = estimate(MCConfig(ensemble=ens, N=16, samples=300, seed=77, workers=1, kmax=3)).to_dict()
    for key in ("moment_means", "covariance", "cov_stderr", "correlation"):
        assert a[key] == c[key]


def test_estimate_jacobi_deterministic_for_fixed_workers():
    ens = EnsembleSpec.jacobi(0.0, 0.0, beta=2.0)
    cfg = MCConfig(ensemble=ens, N=12, samples=200, seed=5, workers=2, kmax=3)
    a = estimate(cfg)
    b = estimate(cfg)
    assert np.array_equal(a.covariance, b.covariance)
    assert 0 < a.ess <= 200


def test_estimate_statistics_against_theory():
    ens = EnsembleSpec.gaussian(beta=1.0)
    est = estimate(MCConfig(ensemble=ens, N=50, samples=4000, seed=31, workers=2, kmax=4))
    rows = covariance_comparison(est, ens)
    for r in rows:
        assert abs(r["z"]) < 6 or abs(r["empirical"] - r["theory"]) < 0.03
    # parity entries of the symmetric ensemble vanish within 3 standard errors
    parity = [r for r in rows if (r["kappa"] + r["ell"]) % 2]
    assert all(abs(r["z"]) <= 3 for r in parity)
    corr = correlation_comparison(est, ens, kmax=3, lmax=3)
    r13 = next(r for r in corr if (r["kappa"], r["ell"]) == (1, 3))
    assert abs(r13["empirical"] - math.sqrt(3) / 2) < 0.02


def test_estimate_covariance_table_roundtrip():
    ens = EnsembleSpec.gaussian(beta=2.0)
    est = estimate(MCConfig(ensemble=ens, N=30, samples=500, seed=8, kmax=3))
    table = est.covariance_table(ens.support())
    assert table.provenance == "monte-carlo"
    # beta multiplied back in: the (1,1) entry estimates alpha_11 = 2
    assert table.value(1, 1) == pytest.approx(2.0, abs=0.5)


def test_finite_size_bias_decreases_with_N():
    # |empirical - limit| for the (2,2) entry shrinks as N grows (noise allowed)
    errs, ses = [], []
    for N in (10, 20, 40, 80):
        cfg = MCConfig(ensemble=EnsembleSpec.gaussian(), N=N, samples=6000,
                       seed=424242, workers=4, kmax=2)
        est = estimate(cfg)
        errs.append(abs(float(est.covariance[1, 1]) - 4.0))
        ses.append(float(est.cov_stderr[1, 1]))
    for i in range(3):
        assert errs[i + 1] <= errs[i] + 3 * (ses[i] + ses[i + 1])
    assert errs[-1] < errs[0]  # the trend is visible end to end


def test_jacobi_chain_mistuning_detected():
    with pytest.raises(ConvergenceError):
        sample_jacobi_mcmc(16, 0.0, 0.0, 2.0, np.random.default_rng(0),
                           burn_in=0, step_size=80.0)
