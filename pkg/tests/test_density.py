import io
import math

import numpy as np
import pytest

from onecut.closedform import EnsembleSpec, gaussian_moment, wishart_moment
from onecut.density import (DensityGrid, PotentialSpec, cov_quadrature, density_closed,
                            equilibrium_moment, potential_for, tricomi_density,
                            two_point_kernel)
from onecut.errors import ConvergenceError
from onecut.genfun import SupportInterval, expand_F

GAUSS = EnsembleSpec.gaussian()
W1 = EnsembleSpec.wishart(1)
W2 = EnsembleSpec.wishart(2)
J00 = EnsembleSpec.jacobi(0.0, 0.0)
J12 = EnsembleSpec.jacobi(1.0, 2.0)


def test_closed_density_values():
    assert density_closed(GAUSS, 0.0) == pytest.approx(1 / math.pi, rel=1e-15)
    assert density_closed(W1, 2.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert density_closed(J00, 0.5) == pytest.approx(2 / math.pi, rel=1e-15)
    assert density_closed(GAUSS, 3.0) == 0.0
    assert density_closed(W2, 0.1) == 0.0  # below the hard-edge gap


@pytest.mark.parametrize("ens", [GAUSS, W1, W2, J00, J12])
def test_tricomi_reconstructs_closed_densities(ens):
    s = ens.support()
    a, b = float(s.a), float(s.b)
    pot = potential_for(ens)
    xs = a + (b - a) * (np.arange(1, 51) / 51.0)
    for x in xs:
        assert tricomi_density(pot, float(x)) == \
            pytest.approx(density_closed(ens, float(x)), abs=1e-6, rel=1e-6)


def test_tricomi_spec_points():
    pot = PotentialSpec(lambda y: y / 2, SupportInterval(-2.0, 2.0))
    assert tricomi_density(pot, 0.5) == pytest.approx(density_closed(GAUSS, 0.5), abs=1e-8)
    pot = PotentialSpec(lambda y: 0.5, SupportInterval(0.0, 4.0))
    assert tricomi_density(pot, 1.0) == pytest.approx(math.sqrt(3) / (2 * math.pi), abs=1e-8)


def test_tricomi_normalization():
    pot = potential_for(J12)
    s = pot.support
    m, L = float(s.midpoint), float(s.half_width)
    n = 400
    th = (2 * np.arange(1, n + 1) - 1) * math.pi / (2 * n)
    xs = m + L * np.cos(th)
    vals = np.array([tricomi_density(pot, float(x)) for x in xs])
    mass = float(np.sum(vals * L * np.sin(th)) * math.pi / n)
    assert mass == pytest.approx(1.0, abs=1e-8)


def test_tricomi_outside_support_rejected():
    pot = potential_for(GAUSS)
    with pytest.raises(ValueError):
        tricomi_density(pot, 2.5)


def test_tricomi_nonconvergence_raises():
    pot = PotentialSpec(lambda y: math.sin(4e4 * y), SupportInterval(-2.0, 2.0))
    with pytest.raises(ConvergenceError):
        tricomi_density(pot, 0.3)


def test_kernel_matches_finite_difference_oracle():
    a, b = -2.0, 2.0
    sig = lambda t: math.sqrt((t - a) * (b - t))
    for (x, y) in [(0.3, -0.5), (-1.1, 0.9), (1.5, 1.0)]:
        h = 1e-6
        fd = (sig(x + h) / (x + h - y) - sig(x - h) / (x - h - y)) / (2 * h)
        oracle = fd / (math.pi ** 2 * sig(y))
        assert two_point_kernel(SupportInterval(a, b), 1.0, x, y) == \
            pytest.approx(oracle, rel=1e-8)


def test_kernel_beta_scaling_and_rejections():
    s = SupportInterval(-2.0, 2.0)
    assert two_point_kernel(s, 2.0, 0.3, -0.5) == \
        pytest.approx(0.5 * two_point_kernel(s, 1.0, 0.3, -0.5), rel=1e-15)
    with pytest.raises(ValueError):
        two_point_kernel(s, 1.0, 0.3, 0.3)
    with pytest.raises(ValueError):
        two_point_kernel(s, 1.0, 2.5, 0.3)


def test_kernel_covariance_functional_is_symmetric():
    # iint K(x,y) f(x) g(y) must be symmetric under swapping the test functions
    s = SupportInterval(-2.0, 2.0)
    n = 256
    th = (2 * np.arange(1, n + 1) - 1) * math.pi / (2 * n)
    x = 2 * np.cos(th)
    w = 2 * np.sin(th) * math.pi / n  # dx weights
    K = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                K[i, j] = two_point_kernel(s, 1.0, float(x[i]), float(x[j]))
    # exclude the diagonal from both; the PV structure cancels in the swap
    f, g = x ** 2, x ** 3
    lhs = w @ (K * np.outer(f, g)) @ w
    rhs = w @ (K * np.outer(g, f)) @ w
    assert lhs == pytest.approx(rhs, abs=1e-6)


def test_equilibrium_moments_match_closed_forms():
    assert equilibrium_moment(GAUSS, 4) == pytest.approx(2.0, abs=1e-10)
    for k in range(13):
        assert equilibrium_moment(GAUSS, k) == \
            pytest.approx(float(gaussian_moment(k)), abs=1e-10)
        assert equilibrium_moment(W2, k) == \
            pytest.approx(float(wishart_moment(2, k)), rel=1e-10, abs=1e-10)
    assert equilibrium_moment(J00, 1) == pytest.approx(0.5, abs=1e-10)
    assert equilibrium_moment(J00, 2) == pytest.approx(0.375, abs=1e-10)


def test_cov_quadrature_spec_values():
    assert cov_quadrature(SupportInterval(-2.0, 2.0), 2, 2) == pytest.approx(4.0, abs=1e-6)
    assert cov_quadrature(SupportInterval(0.0, 4.0), 1, 1) == pytest.approx(2.0, abs=1e-6)
    assert cov_quadrature(SupportInterval(0.0, 1.0), 1, 1) == pytest.approx(0.125, abs=1e-6)
    with pytest.raises(ValueError):
        cov_quadrature(SupportInterval(0.0, 1.0), 0, 1)


@pytest.mark.parametrize("edges", [(-2, 2), (0, 4), (0, 1)])
def test_cov_quadrature_matches_exact_expansion(edges):
    exact = expand_F(SupportInterval(*edges), 4)
    s = SupportInterval(float(edges[0]), float(edges[1]))
    for k in range(1, 5):
        for l in range(1, 5):
            ref = float(exact.value(k, l))
            assert cov_quadrature(s, k, l) == pytest.approx(ref, abs=1e-6 * max(1, abs(ref)))


def test_cov_quadrature_depends_only_on_support():
    # same [0, 4] support described by two different ensembles
    s_from_wishart = W1.support()
    s_custom = EnsembleSpec.custom(SupportInterval(0.0, 4.0), lambda y: 0.61).support()
    for k, l in ((1, 1), (2, 3)):
        assert cov_quadrature(s_from_wishart, k, l) == \
            pytest.approx(cov_quadrature(s_custom, k, l), abs=1e-6)


def test_density_grid_csv_and_normalization():
    grid = DensityGrid.from_ensemble(GAUSS, 128)
    assert grid.normalization() == pytest.approx(1.0, abs=1e-10)
    buf = io.StringIO()
    grid.to_csv(buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "x,rho"
    assert len(lines) == 129
    x, rho = map(float, lines[1].split(","))
    assert rho == pytest.approx(density_closed(GAUSS, x), rel=1e-12)
    # 17 significant digits survive a round trip
    assert f"{x:.17g}" == lines[1].split(",")[0]


def test_density_grid_reconstructed_path():
    grid = DensityGrid.from_ensemble(W2, 24, reconstructed=True)
    for x, v in zip(grid.nodes, grid.values):
        assert v == pytest.approx(density_closed(W2, float(x)), abs=1e-7)
