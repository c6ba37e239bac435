"""Limiting covariances of power-trace moments for one-cut beta-ensembles.

For random matrices whose eigenvalues form a 2D log-gas confined to a single
interval, the N -> infinity covariances of the moments N^{-1} Tr X^k depend
only on the support edges [a, b] (up to an overall 1/beta).  This package
computes the beta-free coefficient tables alpha[k][l] exactly and checks
them along independent routes:

* exact rational expansion of the closed-form generating function (genfun),
* closed-form and centring (shift) formulas for the classical Gaussian,
  Wishart and Jacobi families (closedform),
* principal-value quadrature of the underlying double integral (density),
* finite-N Monte Carlo with tridiagonal/bidiagonal models and a Metropolis
  log-gas chain (mcsim),
* exhaustive enumeration of non-crossing annular pairings (planarcount).
"""

from .closedform import (EnsembleSpec, asymptotic_cov, correlation,
                         correlation_symmetric, correlation_zero_edge, covariance_table,
                         gaussian_cov, gaussian_moment, jacobi_cov, jacobi_edges,
                         jacobi_symmetric_cov, narayana, shift_cov, symmetric_cov,
                         wishart_cov, wishart_moment, wishart_support, zero_edge_cov)
from .density import (DensityGrid, PotentialSpec, cov_quadrature, density_closed,
                      equilibrium_moment, potential_for, tricomi_density,
                      two_point_kernel)
from .errors import ConvergenceError
from .genfun import (CovarianceTable, SupportInterval, eval_F, eval_F_joukowski,
                     eval_F_symmetric, expand_F, expand_F_crosscheck)
from .mcsim import (MCConfig, MCEstimate, chi_sample, correlation_comparison,
                    covariance_comparison, estimate, gamma_sample, sample_hermite,
                    sample_jacobi_mcmc, sample_laguerre, tridiag_eigen)
from .planarcount import (AnnularPairing, MapInvariants, classify,
                          count_connected_annular, count_one_circle, tally_pairings)
from .series import BivariateSeries

__version__ = "0.1.0"

__all__ = [
    "AnnularPairing", "BivariateSeries", "ConvergenceError", "CovarianceTable",
    "DensityGrid", "EnsembleSpec", "MCConfig", "MCEstimate", "MapInvariants",
    "PotentialSpec", "SupportInterval", "asymptotic_cov", "chi_sample", "classify",
    "correlation", "correlation_comparison", "correlation_symmetric",
    "correlation_zero_edge", "count_connected_annular", "count_one_circle",
    "cov_quadrature", "covariance_comparison", "covariance_table", "density_closed",
    "equilibrium_moment", "estimate", "eval_F", "eval_F_joukowski", "eval_F_symmetric",
    "expand_F", "expand_F_crosscheck", "gamma_sample", "gaussian_cov", "gaussian_moment",
    "jacobi_cov", "jacobi_edges", "jacobi_symmetric_cov", "narayana", "potential_for",
    "sample_hermite", "sample_jacobi_mcmc", "sample_laguerre", "shift_cov",
    "symmetric_cov", "tally_pairings", "tricomi_density", "tridiag_eigen",
    "two_point_kernel", "wishart_cov", "wishart_moment", "wishart_support",
    "zero_edge_cov",
]
