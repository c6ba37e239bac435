"""Equilibrium densities, the smoothed two-point kernel and quadrature oracles.

The closed spectral laws of the classical families live here next to their
reconstruction from the potential alone (principal-value inversion on a
single cut) and a floating-point quadrature oracle for the covariance
coefficients.  Every principal-value integral is tamed by subtracting the
pole exactly:

    int f(y)/(y-x) dy = int (f(y)-f(x))/(y-x) dy + f(x) * PV int dy/(y-x),

where the leftover PV term has a closed form under the Chebyshev weights
(zero for the first kind, pi*(m-x) for the second), so the quadrature only
ever sees smooth integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closedform import EnsembleSpec
from .errors import ConvergenceError
from .genfun import SupportInterval

__all__ = [
    "PotentialSpec",
    "DensityGrid",
    "density_closed",
    "potential_for",
    "tricomi_density",
    "two_point_kernel",
    "equilibrium_moment",
    "cov_quadrature",
]

_MAX_NODES = 2 ** 14
_REL_TOL = 1e-8


@dataclass(frozen=True)
class PotentialSpec:
    """Confining potential given through its derivative, with the support hint."""

    v_prime: object
    support: SupportInterval


def potential_for(ensemble: EnsembleSpec) -> PotentialSpec:
    """Potential derivative whose equilibrium measure is the ensemble's density."""
    if ensemble.kind == "gaussian":
        return PotentialSpec(lambda y: 0.5 * y, ensemble.support())
    if ensemble.kind == "wishart":
        # the log-term coefficient (c-1)/2 is what reproduces the spectral law
        # on [(1-sqrt c)^2, (1+sqrt c)^2]
        c = float(ensemble.c)
        return PotentialSpec(lambda y: 0.5 - (c - 1.0) / (2.0 * y), ensemble.support())
    if ensemble.kind == "jacobi":
        g1, g2 = float(ensemble.gamma1), float(ensemble.gamma2)
        return PotentialSpec(lambda y: -g1 / (2.0 * y) + g2 / (2.0 * (1.0 - y)),
                             ensemble.support())
    if ensemble.v_prime_fn is None:
        raise ValueError("custom ensemble carries no potential derivative")
    return PotentialSpec(ensemble.v_prime_fn, ensemble.support())


def density_closed(ensemble: EnsembleSpec, x: float) -> float:
    """Closed-form density of states at x; zero outside the open support."""
    s = ensemble.support()
    a, b = float(s.a), float(s.b)
    if not a < x < b:
        return 0.0
    sig = math.sqrt((x - a) * (b - x))
    if ensemble.kind == "gaussian":
        return sig / (2.0 * math.pi)
    if ensemble.kind == "wishart":
        return sig / (2.0 * math.pi * x)
    if ensemble.kind == "jacobi":
        return (ensemble.gamma1 + ensemble.gamma2 + 2.0) * sig / (2.0 * math.pi * x * (1.0 - x))
    raise ValueError("no closed density for custom ensembles; use tricomi_density")


@dataclass
class DensityGrid:
    """Density values sampled on Chebyshev nodes of the support."""

    nodes: np.ndarray
    values: np.ndarray
    support: SupportInterval

    @classmethod
    def from_ensemble(cls, ensemble: EnsembleSpec, n: int,
                      reconstructed: bool = False) -> "DensityGrid":
        s = ensemble.support()
        m, L = float(s.midpoint), float(s.half_width)
        theta = (2.0 * np.arange(1, n + 1) - 1.0) * math.pi / (2.0 * n)
        nodes = m + L * np.cos(theta)
        if reconstructed:
            pot = potential_for(ensemble)
            values = np.array([tricomi_density(pot, float(x)) for x in nodes])
        else:
            values = np.array([density_closed(ensemble, float(x)) for x in nodes])
        return cls(nodes=nodes, values=values, support=s)

    def normalization(self) -> float:
        """Gauss-Chebyshev weighted mass; approximately 1 for a density."""
        m, L = float(self.support.midpoint), float(self.support.half_width)
        n = len(self.nodes)
        theta = (2.0 * np.arange(1, n + 1) - 1.0) * math.pi / (2.0 * n)
        return float(np.sum(self.values * L * np.sin(theta)) * math.pi / n)

    def to_csv(self, fileobj):
        fileobj.write("x,rho\n")
        for x, r in zip(self.nodes, self.values):
            fileobj.write(f"{x:.17g},{r:.17g}\n")


def _refine(evaluate, n_nodes: int, what: str, tol: float = _REL_TOL) -> float:
    """Node-doubling driver: accept once two successive levels agree."""
    n = max(8, int(n_nodes))
    prev = evaluate(n)
    while True:
        n *= 2
        if n > _MAX_NODES:
            raise ConvergenceError(
                f"{what}: no convergence to {tol:g} within {_MAX_NODES} nodes")
        cur = evaluate(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur


def tricomi_density(pot: PotentialSpec, x: float, n_nodes: int = 64) -> float:
    """Density of states reconstructed from the potential on one cut.

    rho(x) = (1/(pi sigma(x))) [1 + (1/pi) PV int V'(y) sigma(y)/(y-x) dy]
    with sigma(y) = sqrt((y-a)(b-y)).  The PV integral is computed with the
    second-kind Chebyshev rule after exact pole subtraction; ``n_nodes`` is
    the starting resolution of the node-doubling scheme.
    """
    s = pot.support
    a, b = float(s.a), float(s.b)
    if not a < x < b:
        raise ValueError(f"x = {x} outside the open support ({a}, {b})")
    m, L = 0.5 * (a + b), 0.5 * (b - a)
    vp = pot.v_prime
    vpx = float(vp(x))
    sig = math.sqrt((x - a) * (b - x))
    dscale = 1e-9 * (b - a)

    def evaluate(n: int) -> float:
        k = np.arange(1, n + 1)
        phi = k * math.pi / (n + 1)
        y = m + L * np.cos(phi)
        w = (math.pi / (n + 1)) * np.sin(phi) ** 2
        vpy = np.array([float(vp(t)) for t in y])
        dy = y - x
        # difference quotient; a node colliding with x gets a symmetric stencil
        quot = np.empty(n)
        far = np.abs(dy) > dscale
        quot[far] = (vpy[far] - vpx) / dy[far]
        if not far.all():
            h = 1e-6 * (b - a)
            quot[~far] = (float(vp(x + h)) - float(vp(x - h))) / (2.0 * h)
        Q = L * L * float(np.sum(w * quot))
        return (1.0 + (Q + vpx * math.pi * (m - x)) / math.pi) / (math.pi * sig)

    return _refine(evaluate, n_nodes, "tricomi_density")


def two_point_kernel(support: SupportInterval, beta: float, x: float, y: float) -> float:
    """Smoothed two-point kernel K(x, y) on the support, x != y.

    (1/(beta pi^2 sigma(y))) d/dx [ sigma(x)/(x-y) ] with the derivative
    expanded in closed form:
        (a+b-2x) / (2 sigma(x) (x-y)) - sigma(x)/(x-y)^2.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    a, b = float(support.a), float(support.b)
    if not (a < x < b and a < y < b):
        raise ValueError("x and y must lie inside the open support")
    if x == y:
        raise ValueError("the kernel has a non-integrable diagonal; x != y required")
    sx = math.sqrt((x - a) * (b - x))
    sy = math.sqrt((y - a) * (b - y))
    deriv = (a + b - 2.0 * x) / (2.0 * sx * (x - y)) - sx / (x - y) ** 2
    return deriv / (beta * math.pi ** 2 * sy)


def equilibrium_moment(ensemble: EnsembleSpec, k: int, n_nodes: int = 64) -> float:
    """Quadrature moment int x^k rho(x) dx of the closed density."""
    if k < 0:
        raise ValueError("moment order must be >= 0")
    s = ensemble.support()
    m, L = float(s.midpoint), float(s.half_width)

    def evaluate(n: int) -> float:
        theta = (2.0 * np.arange(1, n + 1) - 1.0) * math.pi / (2.0 * n)
        x = m + L * np.cos(theta)
        rho = np.array([density_closed(ensemble, float(t)) for t in x])
        return float(np.sum(L * np.sin(theta) * x ** k * rho) * math.pi / n)

    return _refine(evaluate, n_nodes, "equilibrium_moment", tol=1e-12)


def cov_quadrature(support: SupportInterval, k: int, l: int, n_nodes: int = 64) -> float:
    """Principal-value double-integral oracle for alpha[k][l].

    alpha[k][l] = (1/pi^2) PV iint sqrt((x-a)(b-x)) / sqrt((y-a)(b-y))
                  * k/(y-x) * y^l x^(k-1) dx dy
    evaluated after the Chebyshev substitution in both variables.  The inner
    pole is subtracted exactly: (y^l - x^l)/(y-x) is expanded as the
    polynomial sum x^j y^(l-1-j) and the leftover PV term vanishes under the
    first-kind weight, so the rule integrates a polynomial and converges at
    the first node doubling.
    """
    if k < 1 or l < 1:
        raise ValueError("cov_quadrature needs k, l >= 1")
    a, b = float(support.a), float(support.b)
    m, L = 0.5 * (a + b), 0.5 * (b - a)

    def evaluate(n: int) -> float:
        theta = (2.0 * np.arange(1, n + 1) - 1.0) * math.pi / (2.0 * n)
        x = m + L * np.cos(theta)   # outer variable
        y = x                       # same rule for the inner variable
        inner = np.zeros(n)
        for j in range(l):
            inner += x ** j * np.sum(y ** (l - 1 - j))
        # inner[i] = sum_k q(x_i, y_k) with q the subtracted-pole polynomial
        inner *= math.pi / n
        outer = np.sum(k * L * L * np.sin(theta) ** 2 * x ** (k - 1) * inner)
        return float(outer * math.pi / n) / math.pi ** 2

    return _refine(evaluate, n_nodes, "cov_quadrature")
