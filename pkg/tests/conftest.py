import numpy as np
import pytest


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger JIT compilation of the hot kernels once, outside any timed check
    from onecut._kernels import annular_tally, jacobi_sweeps, tqli_eigenvalues

    d = np.array([1.0, 2.0])
    e = np.array([0.5, 0.0])
    tqli_eigenvalues(d, e)
    annular_tally(1, 1)
    lam = np.array([0.3, 0.5, 0.7])
    jacobi_sweeps(lam, np.zeros(3), np.full(3, 0.5), 0.01, 0.0, 0.0, 2.0)
