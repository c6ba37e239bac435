"""Walkthrough: the universal covariance tables and their many routes.

The limiting covariance of two power-trace moments N^{-1} Tr X^k and
N^{-1} Tr X^l of a one-cut beta-ensemble is alpha[k][l] / (beta N^2), and
the coefficient table alpha depends on nothing but the support [a, b] of
the spectral density.  This script computes the same tables along every
route the library offers and shows they agree exactly.
"""

from fractions import Fraction

from onecut import (EnsembleSpec, SupportInterval, covariance_table, expand_F,
                    expand_F_crosscheck, gaussian_cov, jacobi_symmetric_cov,
                    shift_cov, wishart_cov, zero_edge_cov)


def show(table, title, k=5):
    print(f"\n{title}")
    for i in range(1, k + 1):
        print("   " + "  ".join(f"{str(table.value(i, j)):>12s}" for j in range(1, k + 1)))


# Route 1: exact series expansion of the closed-form generating function.
sym = SupportInterval(-2, 2)
series_table = expand_F(sym, 8)
show(series_table, "support [-2, 2], series expansion:")

# Route 2: the closed form (binomial x Catalan-type products).
closed = covariance_table(EnsembleSpec.gaussian(), 8)
assert closed.entries == series_table.entries

# Route 3: the centring (shift) formula, which works for ANY support.
assert all(shift_cov(sym, k, l) == gaussian_cov(k, l)
           for k in range(9) for l in range(9))
print("series, closed form and shift formula agree exactly on [-2, 2]")

# Route 4: an independent coefficient-extraction recursion.
assert expand_F_crosscheck(sym, 8).entries == series_table.entries
print("independent extraction route agrees exactly")

# The same machinery on a hard-edge support: Wishart with square aspect.
show(expand_F(SupportInterval(0, 4), 5), "support [0, 4] (Wishart c = 1):")
assert all(expand_F(SupportInterval(0, 4), 5).value(k, l) == zero_edge_cov(2, k, l)
           for k in range(1, 6) for l in range(1, 6))

# Wishart covariances are polynomials in the aspect ratio c.
c = Fraction(3)
print(f"\nwishart alpha[3][3] at c = {c}: {wishart_cov(c, 3, 3)}")
print(f"printed polynomial 6(3c + 24c^2 + 46c^3 + 24c^4 + 3c^5) evaluates to "
      f"{6 * (3 * c + 24 * c**2 + 46 * c**3 + 24 * c**4 + 3 * c**5)}")

# Jacobi at gamma1 = gamma2 = 0 lives on [0, 1]; entries are dyadic rationals.
show(covariance_table(SupportInterval(0, 1), 5), "support [0, 1] (Jacobi 0,0):")
assert covariance_table(SupportInterval(0, 1), 5).value(5, 5) == \
    jacobi_symmetric_cov(5, 5) == Fraction(19845, 131072)

# Homogeneity: scaling the support by t scales alpha[k][l] by t^(k+l).
t = Fraction(3, 2)
big = expand_F(SupportInterval(-3, 3), 6)
assert all(big.value(k, l) == t ** (k + l) * series_table.value(k, l)
           for k in range(7) for l in range(7))
print("\nhomogeneity check: [-3, 3] table equals (3/2)^(k+l) times the [-2, 2] table")
