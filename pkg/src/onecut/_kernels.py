"""Numerical hot loops, numba-compiled when available.

Pure-Python fallbacks keep everything functional without numba, just slower;
the public modules never need to know which path is active.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap


_EPS = 2.220446049250313e-16


@njit(cache=True, nogil=True)
def tqli_eigenvalues(d, e):
    """Implicit-shift QL sweep on a symmetric tridiagonal matrix, in place.

    d: diagonal (length n), overwritten with the eigenvalues (unsorted).
    e: subdiagonal in e[0..n-2]; e[n-1] is scratch.  Returns 0 on success,
    1 if any eigenvalue needed more than 50 implicit QL iterations.
    """
    n = d.shape[0]
    if n == 1:
        return 0
    e[n - 1] = 0.0
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > 50:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sgn = r if g >= 0.0 else -r
            g = d[m] - d[l] + e[l] / (g + sgn)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


@njit(cache=True, nogil=True)
def jacobi_sweeps(lam, normals, uniforms, step, g1, g2, beta):
    """Single-site Metropolis sweeps for the log-gas on (0, 1).

    Target: beta * [ sum_{i<j} log|x_i - x_j|
                     + (N/2) sum_i (g1 log x_i + g2 log(1 - x_i)) ].
    Consumes normals/uniforms sequentially (one pair per proposal) so the
    trajectory is a pure function of the pre-drawn streams.  Returns the
    number of accepted moves.
    """
    n = lam.shape[0]
    nprop = normals.shape[0]
    accepted = 0
    idx = 0
    nsweeps = nprop // n
    for _ in range(nsweeps):
        for i in range(n):
            x = lam[i]
            xp = x + step * normals[idx]
            u = uniforms[idx]
            idx += 1
            if xp <= 0.0 or xp >= 1.0:
                continue
            dlog = 0.5 * beta * n * (g1 * (math.log(xp) - math.log(x))
                                     + g2 * (math.log(1.0 - xp) - math.log(1.0 - x)))
            ok = True
            for j in range(n):
                if j == i:
                    continue
                dn = xp - lam[j]
                do = x - lam[j]
                if dn == 0.0:
                    ok = False
                    break
                dlog += beta * (math.log(abs(dn)) - math.log(abs(do)))
            if ok and math.log(u) < dlog:
                lam[i] = xp
                accepted += 1
    return accepted


@njit(cache=True, nogil=True)
def annular_tally(kappa, ell):
    """Exhaustive tally of fixed-point-free pairings on two marked circles.

    Points 0..kappa-1 sit on the first circle, kappa..kappa+ell-1 on the
    second (ell = 0 means a single circle).  For every perfect pairing the
    kernel computes connectivity and, when connected, the genus from
    V - E + F = 2 - 2g with F the cycle count of (circle rotation) composed
    with the pairing.  Returns (disconnected_count, genus_counts).
    """
    n = kappa + ell
    gcounts = np.zeros(10, np.int64)
    disconnected = 0
    if n == 0 or n % 2 == 1:
        return disconnected, gcounts
    m = n // 2
    nverts = 2 if (kappa > 0 and ell > 0) else 1
    partner = np.full(n, -1, np.int64)
    stack_i = np.zeros(m, np.int64)
    stack_j = np.zeros(m, np.int64)
    sigma = np.empty(n, np.int64)
    seen = np.empty(n, np.bool_)
    bfs = np.empty(n, np.int64)
    depth = 0
    i = 0
    j = 1
    while True:
        while j < n and partner[j] >= 0:
            j += 1
        if j >= n:
            depth -= 1
            if depth < 0:
                break
            i = stack_i[depth]
            j = stack_j[depth]
            partner[i] = -1
            partner[j] = -1
            j += 1
            continue
        partner[i] = j
        partner[j] = i
        stack_i[depth] = i
        stack_j[depth] = j
        depth += 1
        if depth == m:
            # faces: cycles of (rotation o pairing)
            for x in range(n):
                p = partner[x]
                if p < kappa:
                    sigma[x] = p + 1 if p + 1 < kappa else 0
                else:
                    sigma[x] = p + 1 if p + 1 < n else kappa
            for x in range(n):
                seen[x] = False
            faces = 0
            for x in range(n):
                if not seen[x]:
                    faces += 1
                    t = x
                    while not seen[t]:
                        seen[t] = True
                        t = sigma[t]
            # connectivity: orbit of point 0 under rotation and pairing
            for x in range(n):
                seen[x] = False
            top = 0
            bfs[0] = 0
            seen[0] = True
            count = 1
            while top >= 0:
                x = bfs[top]
                top -= 1
                p = partner[x]
                if p < kappa:
                    r = p + 1 if p + 1 < kappa else 0
                else:
                    r = p + 1 if p + 1 < n else kappa
                if not seen[p]:
                    seen[p] = True
                    count += 1
                    top += 1
                    bfs[top] = p
                if not seen[r]:
                    seen[r] = True
                    count += 1
                    top += 1
                    bfs[top] = r
                if x < kappa:
                    r2 = x + 1 if x + 1 < kappa else 0
                else:
                    r2 = x + 1 if x + 1 < n else kappa
                if not seen[r2]:
                    seen[r2] = True
                    count += 1
                    top += 1
                    bfs[top] = r2
            if count == n:
                genus = (2 - nverts + m - faces) // 2
                gcounts[genus] += 1
            else:
                disconnected += 1
            depth -= 1
            partner[i] = -1
            partner[j] = -1
            j += 1
            continue
        i2 = 0
        while partner[i2] >= 0:
            i2 += 1
        i = i2
        j = i + 1
    return disconnected, gcounts
