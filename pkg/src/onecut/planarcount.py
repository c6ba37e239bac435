"""Combinatorial oracle: non-crossing pairings on one and two circles.

A perfect pairing of kappa + ell cyclically ordered points (kappa on the
first circle, ell on the second) is a fixed-point-free involution alpha; the
circle structure is the permutation gamma with cycles (0..kappa-1) and
(kappa..kappa+ell-1).  The pairing embeds in the annulus without crossings
exactly when the map (V vertices, E = (kappa+ell)/2 edges, F faces = cycles
of gamma o alpha) is connected with genus 0, where V - E + F = 2 - 2g.

Counting connected genus-0 pairings of two circles reproduces half the
Gaussian covariance table entry by entry, independently of any analysis;
these counts are exhaustive enumerations, not formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._kernels import annular_tally

__all__ = [
    "AnnularPairing",
    "MapInvariants",
    "classify",
    "count_one_circle",
    "count_connected_annular",
    "tally_pairings",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 16


def _check_cap(total: int, cap: int):
    if total > cap:
        raise ValueError(
            f"{total} points exceed the enumeration cap of {cap}; "
            f"raise `cap` explicitly if the runtime is acceptable")


@dataclass(frozen=True)
class AnnularPairing:
    """A fixed-point-free involution on the points of one or two circles."""

    kappa: int
    ell: int
    pairing: tuple

    def __post_init__(self):
        n = self.kappa + self.ell
        if self.kappa < 0 or self.ell < 0 or n == 0:
            raise ValueError("need at least one point")
        if len(self.pairing) != n:
            raise ValueError(f"pairing must assign all {n} points")
        for i, p in enumerate(self.pairing):
            if not 0 <= p < n or p == i or self.pairing[p] != i:
                raise ValueError("pairing must be a fixed-point-free involution")

    def rotate(self, first: int = 0, second: int = 0) -> "AnnularPairing":
        """Cyclically relabel either circle; the embedded map is unchanged."""
        k, l = self.kappa, self.ell

        def relabel(x: int) -> int:
            if x < k:
                return (x + first) % k
            return k + (x - k + second) % l

        new = [0] * (k + l)
        for i, p in enumerate(self.pairing):
            new[relabel(i)] = relabel(p)
        return AnnularPairing(k, l, tuple(new))


@dataclass(frozen=True)
class MapInvariants:
    vertices: int
    edges: int
    faces: int
    connected: bool
    genus: int | None  # defined only for connected maps


def _gamma(kappa: int, ell: int, x: int) -> int:
    n = kappa + ell
    if x < kappa:
        return x + 1 if x + 1 < kappa else 0
    return x + 1 if x + 1 < n else kappa


def classify(pairing: AnnularPairing) -> MapInvariants:
    """Connectivity and genus of the map defined by a pairing."""
    k, l = pairing.kappa, pairing.ell
    n = k + l
    alpha = pairing.pairing
    seen = [False] * n
    faces = 0
    for start in range(n):
        if not seen[start]:
            faces += 1
            t = start
            while not seen[t]:
                seen[t] = True
                t = _gamma(k, l, alpha[t])
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in (alpha[x], _gamma(k, l, x)):
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    connected = count == n
    vertices = 2 if (k > 0 and l > 0) else 1
    edges = n // 2
    genus = (2 - vertices + edges - faces) // 2 if connected else None
    return MapInvariants(vertices=vertices, edges=edges, faces=faces,
                         connected=connected, genus=genus)


def count_one_circle(kappa: int, cap: int = DEFAULT_CAP) -> int:
    """Number of non-crossing perfect pairings of kappa points on one circle."""
    if kappa < 0:
        raise ValueError("kappa must be >= 0")
    if kappa == 0:
        return 1  # the empty pairing
    if kappa % 2:
        return 0
    _check_cap(kappa, cap)
    _, gcounts = annular_tally(kappa, 0)
    return int(gcounts[0])


def count_connected_annular(kappa: int, ell: int, cap: int = DEFAULT_CAP) -> int:
    """Connected genus-0 pairings of two circles with kappa and ell points.

    Equals half the Gaussian covariance coefficient alpha[kappa][ell]; zero
    when kappa + ell is odd.
    """
    if kappa < 1 or ell < 1:
        raise ValueError("both circles need at least one point")
    if (kappa + ell) % 2:
        return 0
    _check_cap(kappa + ell, cap)
    _, gcounts = annular_tally(kappa, ell)
    return int(gcounts[0])


def tally_pairings(kappa: int, ell: int, cap: int = DEFAULT_CAP) -> dict:
    """Full census: disconnected count plus connected counts per genus.

    The entries sum to (kappa + ell - 1)!!, the number of fixed-point-free
    involutions, which is the exhaustiveness check.
    """
    if kappa + ell <= 0 or (kappa + ell) % 2:
        raise ValueError("kappa + ell must be positive and even")
    _check_cap(kappa + ell, cap)
    disc, gcounts = annular_tally(kappa, ell)
    return {"disconnected": int(disc),
            "connected": {g: int(c) for g, c in enumerate(gcounts) if c}}
