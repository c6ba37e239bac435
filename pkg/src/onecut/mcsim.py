"""Finite-N Monte Carlo verification of the limiting covariance tables.

Samplers produce eigenvalue configurations whose limiting spectral laws are
exactly the supports used by the closed forms: [-2, 2] for the tridiagonal
Gaussian model, [(1-sqrt c)^2, (1+sqrt c)^2] for the bidiagonal Wishart
model and [0, 1] for the Metropolis Jacobi chain.  ``estimate`` draws n
spectra, forms the power-trace moments X_k = N^{-1} sum lambda^k and returns
the N^2-scaled sample covariances with jackknife standard errors.

Reproducibility: every independent sample owns a counter-based RNG stream
keyed by (seed, domain tag, sample index), so results are bit-identical for
a fixed seed regardless of worker count or scheduling; Metropolis chains are
keyed by (seed, tag, chain index) with one chain per worker, so fixed
(seed, workers) is bit-identical as well.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_sweeps, tqli_eigenvalues
from .closedform import EnsembleSpec
from .errors import ConvergenceError
from .genfun import CovarianceTable, SupportInterval

__all__ = [
    "MCConfig",
    "MCEstimate",
    "chi_sample",
    "gamma_sample",
    "tridiag_eigen",
    "sample_hermite",
    "sample_laguerre",
    "sample_jacobi_mcmc",
    "estimate",
    "covariance_comparison",
    "correlation_comparison",
]

# domain separators for the per-sample / per-chain RNG keys
_TAG_HERMITE, _TAG_LAGUERRE, _TAG_JACOBI = 101, 102, 103


def _rng_for(seed: int, tag: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, tag, index])))


# ---------------------------------------------------------------------------
# chi draws via an in-repo Gamma rejection sampler
# ---------------------------------------------------------------------------

def gamma_sample(rng: np.random.Generator, shape) -> np.ndarray:
    """Gamma(shape, scale=1) draws, Marsaglia-Tsang rejection (vectorised).

    Shapes below 1 use the standard boost: draw at shape+1 and multiply by
    U^(1/shape).  Consumption of the underlying stream is a deterministic
    function of the drawn values, so fixed streams give fixed output.
    """
    a = np.asarray(shape, dtype=float)
    scalar = a.ndim == 0
    a = np.atleast_1d(a)
    if np.any(a <= 0):
        raise ValueError("gamma shape parameters must be positive")
    boosted = a < 1.0
    ab = np.where(boosted, a + 1.0, a)
    d = ab - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty_like(ab)
    pending = np.arange(ab.size)
    while pending.size:
        x = rng.standard_normal(pending.size)
        u = rng.random(pending.size)
        v = (1.0 + c[pending] * x) ** 3
        dp = d[pending]
        pos = v > 0.0
        logv = np.log(np.where(pos, v, 1.0))
        accept = pos & (np.log(np.maximum(u, 1e-320))
                        < 0.5 * x * x + dp - dp * v + dp * logv)
        out[pending[accept]] = dp[accept] * v[accept]
        pending = pending[~accept]
    if boosted.any():
        u = rng.random(int(boosted.sum()))
        out[boosted] *= u ** (1.0 / a[boosted])
    return out[0] if scalar else out


def chi_sample(rng: np.random.Generator, k) -> np.ndarray:
    """chi_k draws (sqrt of a chi-squared with k degrees of freedom), real k > 0."""
    return np.sqrt(2.0 * gamma_sample(rng, np.asarray(k, dtype=float) / 2.0))


# ---------------------------------------------------------------------------
# eigenvalue samplers
# ---------------------------------------------------------------------------

def tridiag_eigen(diagonal, offdiagonal) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    Implicit-shift QL iteration without eigenvectors; accuracy is a small
    multiple of machine epsilon relative to the matrix scale.
    """
    d = np.ascontiguousarray(diagonal, dtype=float).copy()
    e = np.asarray(offdiagonal, dtype=float)
    n = d.shape[0]
    if e.shape[0] != n - 1:
        raise ValueError(f"need {n - 1} off-diagonal entries, got {e.shape[0]}")
    buf = np.zeros(n)
    buf[: n - 1] = e
    if tqli_eigenvalues(d, buf) != 0:
        raise ConvergenceError("QL iteration exceeded 50 sweeps for an eigenvalue")
    d.sort()
    return d


def sample_hermite(N: int, beta: float, rng: np.random.Generator) -> np.ndarray:
    """One spectrum of the tridiagonal Gaussian model, limiting support [-2, 2]."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if beta <= 0:
        raise ValueError("beta must be positive")
    diag = rng.standard_normal(N) * math.sqrt(2.0 / (beta * N))
    off = chi_sample(rng, beta * np.arange(N - 1, 0, -1)) / math.sqrt(beta * N)
    return tridiag_eigen(diag, off)


def sample_laguerre(N: int, c: float, beta: float, rng: np.random.Generator) -> np.ndarray:
    """One Wishart spectrum from the bidiagonal model B B^T / (beta N).

    B is lower bidiagonal with main diagonal chi_{beta(M-i+1)} and
    subdiagonal chi_{beta(N-i)}, M = round(cN) >= N; the limiting law is the
    spectral density on [(1-sqrt c)^2, (1+sqrt c)^2].
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if beta <= 0:
        raise ValueError("beta must be positive")
    if c < 1:
        raise ValueError("Wishart requires c >= 1")
    M = round(c * N)
    if M < N:
        raise ValueError(f"aspect ratio c = {c} gives M = {M} < N = {N}")
    x = chi_sample(rng, beta * (M - np.arange(N, dtype=float)))
    y = chi_sample(rng, beta * (N - 1 - np.arange(N - 1, dtype=float)))
    diag = x * x
    diag[1:] += y * y
    off = x[:-1] * y  # (B B^T)[i, i+1] pairs the row-i diagonal with the row-i+1 subdiagonal
    vals = tridiag_eigen(diag / (beta * N), off / (beta * N))
    # B B^T is Gram, so negative values are pure roundoff; clamp them
    tiny = -1e-10 * max(1.0, float(vals[-1]))
    if vals[0] < tiny:
        raise ConvergenceError(f"spurious negative eigenvalue {vals[0]}")
    np.clip(vals, 0.0, None, out=vals)
    return vals


class _JacobiChain:
    """Metropolis chain for the Jacobi log-gas with burn-in step adaptation."""

    def __init__(self, N, gamma1, gamma2, beta, rng, step_size=None):
        from .closedform import jacobi_edges

        self.N, self.beta = N, float(beta)
        self.g1, self.g2 = float(gamma1), float(gamma2)
        self.rng = rng
        self.step = float(step_size) if step_size else 0.5 / N
        s = jacobi_edges(gamma1, gamma2)
        m, L = float(s.midpoint), float(s.half_width)
        theta = (2.0 * np.arange(1, N + 1) - 1.0) * math.pi / (2.0 * N)
        self.state = m + L * np.cos(theta[::-1])  # arcsine quantiles, ascending
        self.accept_num = 0
        self.accept_den = 0

    def _advance(self, nsweeps: int) -> float:
        nprop = nsweeps * self.N
        normals = self.rng.standard_normal(nprop)
        uniforms = self.rng.random(nprop)
        acc = jacobi_sweeps(self.state, normals, uniforms,
                            self.step, self.g1, self.g2, self.beta)
        return acc / nprop

    def burn_in(self, sweeps: int = 100):
        """Equilibrate while steering the step size into the [0.3, 0.5] band."""
        blocks, rem = divmod(sweeps, 10)
        for _ in range(blocks):
            rate = self._advance(10)
            if rate > 0.5:
                self.step = min(self.step * 1.4, 0.5)
            elif rate < 0.3:
                self.step = max(self.step / 1.4, 1e-5)
        if rem:
            self._advance(rem)

    def sample(self, thin_sweeps: int) -> np.ndarray:
        rate = self._advance(thin_sweeps)
        self.accept_num += rate * thin_sweeps * self.N
        self.accept_den += thin_sweeps * self.N
        return np.sort(self.state)

    def check_health(self):
        if self.accept_den == 0:
            return
        rate = self.accept_num / self.accept_den
        if not 0.05 <= rate <= 0.95:
            raise ConvergenceError(
                f"Metropolis acceptance {rate:.3f} outside [0.05, 0.95]; chain mis-tuned")


def sample_jacobi_mcmc(N: int, gamma1: float, gamma2: float, beta: float,
                       rng: np.random.Generator, burn_in: int = 100,
                       thin: int | None = None, step_size: float | None = None) -> np.ndarray:
    """One equilibrated state of the Metropolis chain for the Jacobi log-gas."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if beta <= 0:
        raise ValueError("beta must be positive")
    if burn_in < 0 or (thin is not None and thin < 1):
        raise ValueError("burn_in must be >= 0 and thin >= 1")
    chain = _JacobiChain(N, gamma1, gamma2, beta, rng, step_size)
    chain.burn_in(burn_in)
    out = chain.sample(thin if thin is not None else N)
    chain.check_health()
    return out


# ---------------------------------------------------------------------------
# estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MCConfig:
    """Everything a covariance estimation run depends on."""

    ensemble: EnsembleSpec
    N: int
    samples: int
    seed: int
    workers: int = 1
    kmax: int = 8
    lmax: int | None = None     # column cut for comparisons; default kmax
    burn_in: int = 100          # Metropolis only
    thin: int | None = None     # sweeps between kept states; default N
    step_size: float | None = None

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.samples < 2:
            raise ValueError("need at least 2 samples")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.kmax < 1:
            raise ValueError("kmax must be >= 1")
        if self.lmax is not None and not 1 <= self.lmax <= self.kmax:
            raise ValueError("lmax must lie in 1..kmax")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.thin is not None and self.thin < 1:
            raise ValueError("thin must be >= 1")
        if self.step_size is not None and self.step_size <= 0:
            raise ValueError("step_size must be positive")


@dataclass
class MCEstimate:
    """Empirical moment statistics of one run, N^2-scaled covariances."""

    config: dict
    moment_means: np.ndarray
    covariance: np.ndarray
    cov_stderr: np.ndarray
    correlation: np.ndarray
    corr_stderr: np.ndarray
    ess: float

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "moment_means": self.moment_means.tolist(),
            "covariance": self.covariance.tolist(),
            "cov_stderr": self.cov_stderr.tolist(),
            "correlation": self.correlation.tolist(),
            "corr_stderr": self.corr_stderr.tolist(),
            "ess": self.ess,
        }

    def covariance_table(self, support: SupportInterval) -> CovarianceTable:
        """Empirical alpha estimates (beta times the N^2-scaled covariances)."""
        kmax = self.covariance.shape[0]
        beta = self.config["ensemble"]["beta"]
        entries = [[0.0] * (kmax + 1) for _ in range(kmax + 1)]
        for k in range(1, kmax + 1):
            for l in range(1, kmax + 1):
                entries[k][l] = beta * float(self.covariance[k - 1][l - 1])
        return CovarianceTable(support=support, order=kmax, entries=entries,
                               exact=False, provenance="monte-carlo")


def _moment_rows(vals: np.ndarray, kmax: int) -> np.ndarray:
    out = np.empty(kmax)
    acc = vals.copy()
    for k in range(kmax):
        out[k] = acc.mean()
        if k + 1 < kmax:
            acc *= vals
    return out


def _draw_block(ensemble: EnsembleSpec, N: int, kmax: int, seed: int,
                lo: int, hi: int, X: np.ndarray):
    if ensemble.kind == "gaussian":
        for i in range(lo, hi):
            lam = sample_hermite(N, ensemble.beta, _rng_for(seed, _TAG_HERMITE, i))
            X[i] = _moment_rows(lam, kmax)
    else:
        c = float(ensemble.c)
        for i in range(lo, hi):
            lam = sample_laguerre(N, c, ensemble.beta, _rng_for(seed, _TAG_LAGUERRE, i))
            X[i] = _moment_rows(lam, kmax)


def _run_chain(ensemble: EnsembleSpec, cfg: MCConfig, chain_idx: int,
               lo: int, hi: int, X: np.ndarray):
    rng = _rng_for(cfg.seed, _TAG_JACOBI, chain_idx)
    chain = _JacobiChain(cfg.N, ensemble.gamma1, ensemble.gamma2,
                         ensemble.beta, rng, cfg.step_size)
    chain.burn_in(cfg.burn_in)
    thin = cfg.thin if cfg.thin is not None else cfg.N
    for i in range(lo, hi):
        lam = chain.sample(thin)
        X[i] = _moment_rows(lam, cfg.kmax)
    chain.check_health()


def _integrated_ess(series: np.ndarray) -> float:
    n = len(series)
    x = series - series.mean()
    var = float(x @ x) / n
    if n < 8 or var <= 0.0:
        return float(n)
    tau = 1.0
    for lag in range(1, min(n // 3, 256)):
        rho = float(x[:-lag] @ x[lag:]) / ((n - lag) * var)
        if rho <= 0.0:
            break
        tau += 2.0 * rho
    return n / tau


def _jackknife(X: np.ndarray, N: int, bounds: list) -> tuple:
    """Delete-one-group jackknife of the N^2-scaled covariance and correlation.

    bounds lists the (lo, hi) index ranges of the deletion groups; (i, i+1)
    for every i is the plain delete-1 jackknife.
    """
    n, K = X.shape
    S1 = X.sum(axis=0)
    S2 = X.T @ X
    mean = S1 / n
    cov_full = (S2 - np.outer(S1, S1) / n) / (n - 1)
    corr_full = _to_corr(cov_full)
    bounds = [(lo, hi) for lo, hi in bounds if n - (hi - lo) >= 2]
    if len(bounds) < 2:  # too few samples for a jackknife; report zero spread
        zeros = np.zeros((K, K))
        return mean, cov_full * N * N, zeros, corr_full, zeros.copy()
    B = len(bounds)
    cov_del = np.empty((B, K, K))
    corr_del = np.empty((B, K, K))
    for bi, (lo, hi) in enumerate(bounds):
        xb = X[lo:hi]
        nb = hi - lo
        S1b = S1 - xb.sum(axis=0)
        S2b = S2 - xb.T @ xb
        nn = n - nb
        cb = (S2b - np.outer(S1b, S1b) / nn) / (nn - 1)
        cov_del[bi] = cb
        corr_del[bi] = _to_corr(cb)
    fac = (B - 1) / B
    cov_se = np.sqrt(fac * ((cov_del - cov_del.mean(axis=0)) ** 2).sum(axis=0)) * N * N
    corr_se = np.sqrt(fac * ((corr_del - corr_del.mean(axis=0)) ** 2).sum(axis=0))
    return mean, cov_full * N * N, cov_se, corr_full, corr_se


def _to_corr(cov: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.clip(np.diag(cov), 1e-300, None))
    return cov / np.outer(d, d)


def estimate(config: MCConfig) -> MCEstimate:
    """Sample spectra and estimate the N^2-scaled moment covariances.

    Independent-draw ensembles (Gaussian, Wishart) use delete-1 jackknife
    standard errors; the Metropolis Jacobi ensemble uses a delete-one-batch
    jackknife over contiguous blocks of each chain together with an
    autocorrelation-based effective sample size of the first moment.
    """
    ens = config.ensemble
    n, kmax = config.samples, config.kmax
    X = np.empty((n, kmax))
    if ens.kind in ("gaussian", "wishart"):
        if config.workers == 1:
            _draw_block(ens, config.N, kmax, config.seed, 0, n, X)
        else:
            step = -(-n // config.workers)
            chunks = [(lo, min(lo + step, n)) for lo in range(0, n, step)]
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                futures = [pool.submit(_draw_block, ens, config.N, kmax,
                                       config.seed, lo, hi, X)
                           for lo, hi in chunks]
                for f in futures:
                    f.result()
        bounds = [(i, i + 1) for i in range(n)]
        ess = float(n)
    elif ens.kind == "jacobi":
        chains = min(config.workers, n)
        base, extra = divmod(n, chains)
        bounds_chain = []
        lo = 0
        for w in range(chains):
            hi = lo + base + (1 if w < extra else 0)
            bounds_chain.append((lo, hi))
            lo = hi
        if chains == 1:
            _run_chain(ens, config, 0, *bounds_chain[0], X)
        else:
            with ThreadPoolExecutor(max_workers=chains) as pool:
                futures = [pool.submit(_run_chain, ens, config, w, lo, hi, X)
                           for w, (lo, hi) in enumerate(bounds_chain)]
                for f in futures:
                    f.result()
        ess = sum(_integrated_ess(X[lo:hi, 0]) for lo, hi in bounds_chain)
        bounds = []
        for lo, hi in bounds_chain:
            kept = hi - lo
            nb = min(50, kept)
            bb, be = divmod(kept, nb)
            s = lo
            for j in range(nb):
                e = s + bb + (1 if j < be else 0)
                bounds.append((s, e))
                s = e
    else:
        raise ValueError(f"no sampler for ensemble kind {ens.kind!r}")

    mean, cov, cov_se, corr, corr_se = _jackknife(X, config.N, bounds)
    cfg_echo = {
        "ensemble": ens.describe(),
        "N": config.N,
        "samples": n,
        "seed": config.seed,
        "workers": config.workers,
        "kmax": kmax,
        "lmax": config.lmax if config.lmax is not None else kmax,
        "burn_in": config.burn_in,
        "thin": config.thin if config.thin is not None else config.N,
    }
    return MCEstimate(config=cfg_echo, moment_means=mean, covariance=cov,
                      cov_stderr=cov_se, correlation=corr, corr_stderr=corr_se,
                      ess=ess)


def covariance_comparison(est: MCEstimate, ensemble: EnsembleSpec,
                          kmax: int | None = None, lmax: int | None = None) -> list:
    """Rows (kappa, ell, empirical, theory, stderr, z) against the closed form."""
    K = est.covariance.shape[0]
    kmax = min(kmax or K, K)
    lmax = min(lmax or K, K)
    rows = []
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            emp = float(est.covariance[k - 1, l - 1])
            se = float(est.cov_stderr[k - 1, l - 1])
            theory = float(ensemble.cov(k, l)) / ensemble.beta
            z = (emp - theory) / se if se > 0 else math.inf * (emp != theory)
            rows.append({"kappa": k, "ell": l, "empirical": emp,
                         "theory": theory, "stderr": se, "z": z})
    return rows


def correlation_comparison(est: MCEstimate, ensemble: EnsembleSpec,
                           kmax: int | None = None, lmax: int | None = None) -> list:
    """Correlation-coefficient rows; the limiting r is beta-free."""
    K = est.correlation.shape[0]
    kmax = min(kmax or K, K)
    lmax = min(lmax or K, K)
    diag = [float(ensemble.cov(k, k)) for k in range(1, max(kmax, lmax) + 1)]
    rows = []
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):
            emp = float(est.correlation[k - 1, l - 1])
            se = float(est.corr_stderr[k - 1, l - 1])
            theory = float(ensemble.cov(k, l)) / math.sqrt(diag[k - 1] * diag[l - 1])
            z = (emp - theory) / se if se > 0 else math.inf * (emp != theory)
            rows.append({"kappa": k, "ell": l, "empirical": emp,
                         "theory": theory, "stderr": se, "z": z})
    return rows
