"""Universal covariance generating function for one-cut supports.

For an ensemble whose limiting spectral density lives on a single interval
``[a, b]``, the large-N covariances of power-trace moments are generated by

    F(z, w) = (1/beta) * z*w/(z-w)^2
              * [ (2*a*b*z*w - (a+b)*(z+w) + 2)
                  / (2*sqrt((1-a*z)(1-b*z)(1-a*w)(1-b*w))) - 1 ],

which depends on the ensemble only through the support edges.  This module
evaluates F numerically (directly, in the simplified symmetric-interval form,
and through the exterior Joukowski uniformisation as a cross-check) and
expands it exactly: ``expand_F`` returns the rational coefficient table
``alpha[k][l]`` (beta-free) via truncated-series arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .series import BivariateSeries

__all__ = [
    "SupportInterval",
    "CovarianceTable",
    "eval_F",
    "eval_F_symmetric",
    "eval_F_joukowski",
    "expand_F",
    "expand_F_crosscheck",
]

PROVENANCES = ("series", "closed-form", "shift-formula", "quadrature", "monte-carlo")

# Relative width of the band around z == w where the 0/0 quotient is replaced
# by the even Taylor expansion of the bracket in (z - w).
_DIAGONAL_BAND = 1e-6


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class SupportInterval:
    """The single support interval [a, b] of a one-cut spectral density."""

    a: object
    b: object

    def __post_init__(self):
        af, bf = float(self.a), float(self.b)
        if not (math.isfinite(af) and math.isfinite(bf)):
            raise ValueError("support edges must be finite")
        if not af < bf:
            raise ValueError(f"support requires a < b, got [{self.a}, {self.b}]")

    @property
    def midpoint(self):
        return (self.a + self.b) / 2 if self.is_exact else (float(self.a) + float(self.b)) / 2.0

    @property
    def half_width(self):
        return (self.b - self.a) / 2 if self.is_exact else (float(self.b) - float(self.a)) / 2.0

    @property
    def radius(self) -> float:
        """max(|a|, |b|), the reciprocal radius of the analyticity disk."""
        return max(abs(float(self.a)), abs(float(self.b)))

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.a) and _is_exact(self.b)

    @property
    def is_symmetric(self) -> bool:
        return self.a == -self.b

    def as_fractions(self) -> tuple[Fraction, Fraction]:
        if not self.is_exact:
            raise ValueError(
                "exact rational edges required; pass int/Fraction edges "
                "(for irrational edges use the closed-form/shift route)")
        return Fraction(self.a), Fraction(self.b)

    def scaled(self, t) -> "SupportInterval":
        if t > 0:
            return SupportInterval(self.a * t, self.b * t)
        if t < 0:
            return SupportInterval(self.b * t, self.a * t)
        raise ValueError("scale factor must be nonzero")


@dataclass
class CovarianceTable:
    """Beta-free covariance coefficients alpha[k][l] for 0 <= k, l <= order."""

    support: SupportInterval
    order: int
    entries: list
    exact: bool
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        K = self.order
        if len(self.entries) != K + 1 or any(len(r) != K + 1 for r in self.entries):
            raise ValueError("entries must be a (order+1) x (order+1) table")

    def value(self, k: int, l: int):
        if not (0 <= k <= self.order and 0 <= l <= self.order):
            raise ValueError(f"({k},{l}) outside table of order {self.order}")
        return self.entries[k][l]

    def check_invariants(self):
        """Symmetry, zero row/column 0 and (for symmetric supports) parity."""
        K = self.order
        for k in range(K + 1):
            if self.entries[k][0] != 0 or self.entries[0][k] != 0:
                raise AssertionError(f"row/column 0 not identically zero at {k}")
            for l in range(k, K + 1):
                if self.entries[k][l] != self.entries[l][k]:
                    raise AssertionError(f"table not symmetric at ({k},{l})")
                if self.support.is_symmetric and (k + l) % 2 and self.entries[k][l] != 0:
                    raise AssertionError(f"parity violated at ({k},{l})")
        return True


# ---------------------------------------------------------------------------
# numerical evaluation
# ---------------------------------------------------------------------------

def _check_point(support: SupportInterval, beta: float, z: float, zeta: float):
    if beta <= 0:
        raise ValueError("beta must be positive")
    r = support.radius
    if abs(z) * r >= 1.0 or abs(zeta) * r >= 1.0:
        raise ValueError(
            f"({z}, {zeta}) outside the joint analyticity domain |z|,|w| < {1.0 / r:.6g}")


def _bracket_diagonal_coeffs(a: float, b: float, s: float) -> tuple[float, float]:
    # Even expansion of the bracket at the midpoint s = (z+w)/2:
    #   bracket = c1*(z-w)^2/4 + c2*(z-w)^4/16 + O((z-w)^6)
    R = (1.0 - a * s) * (1.0 - b * s)
    Rp = 2.0 * a * b * s - (a + b)
    ab = a * b
    c1 = Rp * Rp / (2.0 * R * R) - 2.0 * ab / R
    c2 = (2.0 * ab * ab / R ** 2 - 2.0 * ab * Rp * Rp / R ** 3 + 3.0 * Rp ** 4 / (8.0 * R ** 4))
    return c1, c2


def _eval_near_diagonal(a: float, b: float, beta: float, z: float, zeta: float) -> float:
    c1, c2 = _bracket_diagonal_coeffs(a, b, 0.5 * (z + zeta))
    eps2 = (z - zeta) ** 2
    return z * zeta * (0.25 * c1 + c2 * eps2 / 16.0) / beta


def eval_F(support: SupportInterval, beta: float, z: float, zeta: float) -> float:
    """Generating function of the limiting covariances at a real point.

    Inside the joint analyticity domain |z|, |w| < 1/max(|a|,|b|) all four
    radicands are positive and the principal square root applies.  On the
    diagonal z == w the 0/0 quotient is removable; a band of relative width
    1e-6 around it is evaluated through the Taylor form instead.
    """
    _check_point(support, beta, z, zeta)
    a, b = float(support.a), float(support.b)
    if abs(z - zeta) < _DIAGONAL_BAND * max(abs(z), abs(zeta), 1.0):
        return _eval_near_diagonal(a, b, beta, z, zeta)
    num = 2.0 * a * b * z * zeta - (a + b) * (z + zeta) + 2.0
    rad = (1.0 - a * z) * (1.0 - b * z) * (1.0 - a * zeta) * (1.0 - b * zeta)
    bracket = num / (2.0 * math.sqrt(rad)) - 1.0
    return (z * zeta / (z - zeta) ** 2) * bracket / beta


def eval_F_symmetric(L: float, beta: float, z: float, zeta: float) -> float:
    """Same generating function for a symmetric support [-L, L]."""
    if L <= 0:
        raise ValueError("L must be positive")
    support = SupportInterval(-float(L), float(L))
    _check_point(support, beta, z, zeta)
    if abs(z - zeta) < _DIAGONAL_BAND * max(abs(z), abs(zeta), 1.0):
        return _eval_near_diagonal(-L, L, beta, z, zeta)
    L2 = float(L) * float(L)
    bracket = (1.0 - L2 * z * zeta) / math.sqrt((1.0 - L2 * z * z) * (1.0 - L2 * zeta * zeta)) - 1.0
    return (z * zeta / (z - zeta) ** 2) * bracket / beta


def _joukowski_exterior_inverse(support: SupportInterval, w: float) -> float:
    # root of u^2 - ((w - m)/gp) u + 1 = 0 with |u| > 1, gp = (a-b)/4
    m = (float(support.a) + float(support.b)) / 2.0
    gp = (float(support.a) - float(support.b)) / 4.0
    t = (w - m) / gp
    disc = t * t - 4.0
    if disc <= 0.0:
        raise ValueError(f"point 1/z = {w} lies on the cut; no exterior branch")
    r = math.sqrt(disc)
    u = (t + r) / 2.0 if t >= 0.0 else (t - r) / 2.0
    if abs(u) <= 1.0:
        raise ValueError(f"branch selection failed at 1/z = {w}")
    return u


def eval_F_joukowski(support: SupportInterval, beta: float, z: float, zeta: float) -> float:
    """Cross-evaluation of the generating function via the cut-exterior map.

    With j(u) = (a+b)/2 + ((a-b)/4)(u + 1/u) and u, v the exterior preimages
    of 1/z, 1/zeta, the function equals 2/(beta*z*w) / (j'(u) j'(v) (uv-1)^2).
    """
    _check_point(support, beta, z, zeta)
    if z == 0.0 or zeta == 0.0:
        raise ValueError("the uniformised form needs z, w != 0")
    if z == zeta:
        raise ValueError("the uniformised form needs z != w")
    gp = (float(support.a) - float(support.b)) / 4.0
    u = _joukowski_exterior_inverse(support, 1.0 / z)
    v = _joukowski_exterior_inverse(support, 1.0 / zeta)
    jpu = gp * (1.0 - 1.0 / (u * u))
    jpv = gp * (1.0 - 1.0 / (v * v))
    return 2.0 / (beta * z * zeta) / (jpu * jpv * (u * v - 1.0) ** 2)


# ---------------------------------------------------------------------------
# exact expansion
# ---------------------------------------------------------------------------

def _divide_by_z_minus_w_squared(s: BivariateSeries) -> BivariateSeries:
    """Exact division T = s / (z - w)^2 in the truncated ring.

    Solves T*(z^2 - 2zw + w^2) = s degree by degree; the two leftover
    equations per total degree are divisibility constraints and are checked
    exactly, so a non-divisible input cannot slip through silently.
    """
    M = s.order
    if M < 2:
        raise ValueError("order too small to divide by (z - w)^2")
    sc = s.c
    if sc[0][0] != 0 or sc[1][0] != 0 or sc[0][1] != 0:
        raise ValueError("series is not divisible by (z - w)^2")
    t = BivariateSeries(M - 2)
    tc = t.c
    for d in range(2, M + 1):
        # [z^i w^(d-i)] of T*(z-w)^2 = T[i-2][d-i] - 2 T[i-1][d-i-1] + T[i][d-i-2]
        for i in range(d - 1):
            j = d - i
            val = sc[i][j]
            if i >= 1:
                val += 2 * tc[i - 1][j - 1]
            if i >= 2:
                val -= tc[i - 2][j]
            tc[i][j - 2] = val
        # equations at (d-1, 1) and (d, 0) have no new unknowns: divisibility checks
        lhs = (tc[d - 3][1] if d >= 3 else Fraction(0)) - 2 * tc[d - 2][0]
        if sc[d - 1][1] != lhs or sc[d][0] != tc[d - 2][0]:
            raise ValueError("series is not divisible by (z - w)^2")
    return t


def expand_F(support: SupportInterval, order: int) -> CovarianceTable:
    """Exact beta-free coefficient table from the closed form.

    Builds numerator * (R_z R_w)^(-1/2) as an exact bivariate series, divides
    by (z - w)^2 in the ring and reads off alpha[k][l] = [z^k w^l] of z*w
    times the quotient.  Requires rational edges.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a, b = support.as_fractions()
    M = 2 * order
    Rz = BivariateSeries(M, {(0, 0): 1, (1, 0): -(a + b), (2, 0): a * b})
    Rw = BivariateSeries(M, {(0, 0): 1, (0, 1): -(a + b), (0, 2): a * b})
    inv_sqrt = (Rz * Rw).sqrt().inverse()
    num = BivariateSeries(M, {(1, 1): 2 * a * b, (1, 0): -(a + b), (0, 1): -(a + b), (0, 0): 2})
    bracket = num * inv_sqrt * Fraction(1, 2) - 1
    quot = _divide_by_z_minus_w_squared(bracket)
    entries = [[Fraction(0)] * (order + 1) for _ in range(order + 1)]
    for k in range(1, order + 1):
        for l in range(1, order + 1):
            entries[k][l] = quot.coefficient(k - 1, l - 1)
    return CovarianceTable(support=support, order=order, entries=entries,
                           exact=True, provenance="series")


def _univariate_sqrt(r1: Fraction, r2: Fraction, M: int) -> list:
    # sqrt(1 + r1*x + r2*x^2) with constant term 1
    t = [Fraction(0)] * (M + 1)
    t[0] = Fraction(1)
    for n in range(1, M + 1):
        rn = r1 if n == 1 else (r2 if n == 2 else Fraction(0))
        acc = sum((t[p] * t[n - p] for p in range(1, n)), Fraction(0))
        t[n] = (rn - acc) / 2
    return t


def _univariate_inverse(s: list, M: int) -> list:
    u = [Fraction(0)] * (M + 1)
    u[0] = Fraction(1) / s[0]
    for n in range(1, M + 1):
        acc = sum((s[p] * u[n - p] for p in range(1, n + 1)), Fraction(0))
        u[n] = -acc * u[0]
    return u


def expand_F_crosscheck(support: SupportInterval, order: int) -> CovarianceTable:
    """Independent coefficient extraction used to validate ``expand_F``.

    Reads alpha[k][l] as k times the (k+m, l-m)-coefficient convolution of
    sqrt(R(z)) against 1/sqrt(R(w)), i.e. from the expansion of
    sqrt(R(z)/R(w)) * w/(z-w) in the region |w| < |z|.  Univariate recursions
    only; no bivariate ring, no division by (z - w)^2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a, b = support.as_fractions()
    M = 2 * order
    s = _univariate_sqrt(-(a + b), a * b, M)
    t = _univariate_inverse(s, M)
    entries = [[Fraction(0)] * (order + 1) for _ in range(order + 1)]
    for k in range(1, order + 1):
        for l in range(1, order + 1):
            # minus sign: the iterated |w|<|z| expansion yields -alpha (contour
            # orientation); pinned against the closed-form table
            entries[k][l] = -k * sum((s[k + m] * t[l - m] for m in range(1, l + 1)), Fraction(0))
    return CovarianceTable(support=support, order=order, entries=entries,
                           exact=True, provenance="series")
