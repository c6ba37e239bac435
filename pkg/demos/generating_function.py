"""Walkthrough: evaluating the covariance generating function three ways.

F(z, w) packages every covariance coefficient of a support [a, b] into one
closed-form function of two variables.  Here it is evaluated directly, in
the simplified symmetric-interval form, and through the Joukowski
uniformisation of the cut exterior; the partial sums of its Taylor
coefficients are then shown converging to the point values.
"""

import numpy as np

from onecut import (SupportInterval, eval_F, eval_F_joukowski, eval_F_symmetric,
                    expand_F)

s = SupportInterval(-2.0, 2.0)
z, w = 0.2, 0.1

direct = eval_F(s, 1.0, z, w)
symmetric = eval_F_symmetric(2.0, 1.0, z, w)
joukowski = eval_F_joukowski(s, 1.0, z, w)
print(f"F({z}, {w}) on [-2, 2]:")
print(f"  direct      {direct:.15f}")
print(f"  symmetric   {symmetric:.15f}")
print(f"  joukowski   {joukowski:.15f}")

# agreement on a random grid of admissible points, several supports
rng = np.random.default_rng(0)
worst = 0.0
for edges in [(-2.0, 2.0), (0.0, 4.0), (0.0, 1.0), (-1.0, 3.0)]:
    sup = SupportInterval(*edges)
    r = 0.9 / sup.radius
    n = 0
    while n < 200:
        a, b = rng.uniform(-r, r, size=2)
        if min(abs(a), abs(b), abs(a - b)) < 1e-3:
            continue
        n += 1
        worst = max(worst, abs(eval_F(sup, 1.0, a, b) - eval_F_joukowski(sup, 1.0, a, b)))
print(f"\nmax |direct - joukowski| over 800 random points: {worst:.3g}")

# the table entries are literally the Taylor coefficients of F
table = expand_F(SupportInterval(-2, 2), 24)
target = eval_F(s, 1.0, z, w)
print(f"\npartial sums of the coefficient table at ({z}, {w}):")
for K in (2, 4, 8, 16, 24):
    partial = sum(float(table.value(k, l)) * z ** k * w ** l
                  for k in range(1, K + 1) for l in range(1, K + 1))
    print(f"  K = {K:2d}: {partial:.15f}   error {abs(partial - target):.3g}")

# beta enters only as a prefactor
print(f"\nbeta scaling: F at beta=4 times 4 equals F at beta=1: "
      f"{4 * eval_F(s, 4.0, z, w):.15f} vs {eval_F(s, 1.0, z, w):.15f}")
