"""Closed-form limiting moments and covariances of the classical families.

All covariance values are the beta-free coefficients alpha[k][l]; the actual
limiting covariance of N^{-1} Tr X^k and N^{-1} Tr X^l is alpha[k][l] /
(beta N^2).  Every function returns exact rationals whenever its inputs are
exact (int/Fraction) and floats otherwise.

Conventions (pinned to the supports used throughout the package):

* Gaussian: support [-2, 2], moments are Catalan numbers.
* Wishart(c), c >= 1: support [(1-sqrt c)^2, (1+sqrt c)^2]; the density has
  mean c, so the moments are sum_p c^p Nar(k, p) over Narayana numbers.
* Jacobi(g1, g2): support inside [0, 1] with the explicit edge formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .genfun import CovarianceTable, SupportInterval

__all__ = [
    "EnsembleSpec",
    "gaussian_moment",
    "gaussian_cov",
    "symmetric_cov",
    "shift_cov",
    "zero_edge_cov",
    "narayana",
    "wishart_moment",
    "wishart_cov",
    "wishart_support",
    "jacobi_edges",
    "jacobi_cov",
    "jacobi_symmetric_cov",
    "correlation",
    "correlation_zero_edge",
    "correlation_symmetric",
    "asymptotic_cov",
    "covariance_table",
]

# beyond this total order the exact binomial path switches to log-gamma
_EXACT_BINOM_LIMIT = 128


def _exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _check_kl(k: int, l: int):
    if k < 0 or l < 0:
        raise ValueError("moment orders must be >= 0")


def gaussian_moment(k: int) -> Fraction:
    """k-th limiting moment on [-2, 2]: Catalan(k/2) for even k, else 0."""
    if k < 0:
        raise ValueError("moment order must be >= 0")
    if k % 2:
        return Fraction(0)
    return Fraction(2, k + 2) * comb(k, k // 2)


def gaussian_cov(k: int, l: int) -> Fraction:
    """alpha[k][l] on [-2, 2]: (4kl/(k+l)) C(k-1, floor(k/2)) C(l-1, floor(l/2))."""
    _check_kl(k, l)
    if k == 0 or l == 0 or (k - l) % 2:
        return Fraction(0)
    return Fraction(4 * k * l, k + l) * comb(k - 1, k // 2) * comb(l - 1, l // 2)


def symmetric_cov(L, k: int, l: int):
    """alpha[k][l] for support [-L, L]: (L/2)^(k+l) times the [-2,2] value."""
    if L <= 0:
        raise ValueError("L must be positive")
    g = gaussian_cov(k, l)
    if g == 0:
        return Fraction(0) if _exact(L) else 0.0
    half = Fraction(L, 2) if _exact(L) else L / 2.0
    return half ** (k + l) * g


def shift_cov(support: SupportInterval, k: int, l: int):
    """alpha[k][l] for an arbitrary support [a, b] by centring.

    Binomial transport of the symmetric-interval coefficients:
        sum_{p,q} C(k,p) C(l,q) m^(k+l-p-q) (L/2)^(p+q) alpha_G[p][q]
    with m = (a+b)/2 and L = (b-a)/2.  Written in the cancelled form so that
    m = 0 is regular (0^0 = 1), where it reduces to the symmetric formula.
    """
    _check_kl(k, l)
    exact = support.is_exact
    if exact:
        a, b = support.as_fractions()
        m, half = (a + b) / 2, (b - a) / 4
        total = Fraction(0)
    else:
        a, b = float(support.a), float(support.b)
        m, half = (a + b) / 2.0, (b - a) / 4.0
        total = 0.0
    for p in range(k + 1):
        for q in range(l + 1):
            g = gaussian_cov(p, q)
            if g == 0:
                continue
            rest = k + l - p - q
            if m == 0 and rest > 0:
                continue
            mfac = m ** rest if rest > 0 else 1
            total += comb(k, p) * comb(l, q) * mfac * half ** (p + q) * g
    return total


def zero_edge_cov(L, k: int, l: int):
    """alpha[k][l] for support [0, 2L]: (L/2)^(k+l) (4kl/(k+l)) C(2k-1,k) C(2l-1,l)."""
    if L <= 0:
        raise ValueError("L must be positive")
    _check_kl(k, l)
    if k == 0 or l == 0:
        return Fraction(0) if _exact(L) else 0.0
    if k + l > _EXACT_BINOM_LIMIT or not _exact(L):
        return math.exp(_log_zero_edge_cov(float(L), k, l))
    return (Fraction(L, 2) ** (k + l) * Fraction(4 * k * l, k + l)
            * comb(2 * k - 1, k) * comb(2 * l - 1, l))


def _log_zero_edge_cov(L: float, k: int, l: int) -> float:
    lbin = lambda n, r: math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
    return ((k + l) * math.log(L / 2.0) + math.log(4.0 * k * l / (k + l))
            + lbin(2 * k - 1, k) + lbin(2 * l - 1, l))


def narayana(k: int, p: int) -> Fraction:
    """Narayana number C(k, p-1) C(k-1, p-1) / p."""
    if k < 1 or p < 1 or p > k:
        raise ValueError("narayana(k, p) needs 1 <= p <= k")
    return Fraction(comb(k, p - 1) * comb(k - 1, p - 1), p)


def wishart_moment(c, k: int):
    """k-th limiting moment of the Wishart ensemble: sum_p c^p Nar(k, p).

    The first moment is c, matching the spectral law on
    [(1-sqrt c)^2, (1+sqrt c)^2] and the B B^T / (beta N) realisation.
    """
    if c < 1:
        raise ValueError("Wishart requires c >= 1")
    if k < 0:
        raise ValueError("moment order must be >= 0")
    if k == 0:
        return Fraction(1) if _exact(c) else 1.0
    cc = Fraction(c) if _exact(c) else float(c)
    return sum(cc ** p * narayana(k, p) for p in range(1, k + 1))


def wishart_support(c) -> SupportInterval:
    if c < 1:
        raise ValueError("Wishart requires c >= 1")
    s = math.sqrt(c)
    return SupportInterval((1.0 - s) ** 2, (1.0 + s) ** 2)


def wishart_cov(c, k: int, l: int):
    """alpha[k][l] of the Wishart(c) ensemble, a polynomial in c.

    4 (1+c)^(k+l) sum_{p,q >= 0 same parity} (sqrt(c)/(1+c))^(p+q)
    (pq/(p+q)) C(k,p) C(l,q) C(p-1,floor(p/2)) C(q-1,floor(q/2)); the
    (0,0) term is excluded (pq/(p+q) -> 0) and all surviving terms carry
    integer powers of c, so rational c gives an exact rational value.
    """
    if c < 1:
        raise ValueError("Wishart requires c >= 1")
    _check_kl(k, l)
    exact = _exact(c)
    cc = Fraction(c) if exact else float(c)
    total = Fraction(0) if exact else 0.0
    for p in range(1, k + 1):
        for q in range(1, l + 1):
            if (p - q) % 2:
                continue
            pref = Fraction(4 * p * q, p + q) if exact else 4.0 * p * q / (p + q)
            total += (comb(k, p) * comb(l, q) * comb(p - 1, p // 2) * comb(q - 1, q // 2)
                      * pref * cc ** ((p + q) // 2) * (1 + cc) ** (k + l - p - q))
    return total


def jacobi_edges(gamma1: float, gamma2: float) -> SupportInterval:
    """Support edges of the Jacobi(g1, g2) spectral density inside [0, 1]."""
    if gamma1 < 0 or gamma2 < 0:
        raise ValueError("Jacobi requires gamma1, gamma2 >= 0")
    den = gamma1 + gamma2 + 2.0
    r1 = math.sqrt(gamma2 + 1.0)
    r2 = math.sqrt((gamma1 + 1.0) * (gamma1 + gamma2 + 1.0))
    return SupportInterval(((r1 - r2) / den) ** 2, ((r1 + r2) / den) ** 2)


def jacobi_cov(gamma1: float, gamma2: float, k: int, l: int) -> float:
    """alpha[k][l] of the Jacobi ensemble via the explicit double binomial sum."""
    if gamma1 < 0 or gamma2 < 0:
        raise ValueError("Jacobi requires gamma1, gamma2 >= 0")
    _check_kl(k, l)
    P = gamma1 ** 2 + gamma1 * gamma2 + 2.0 * (gamma1 + gamma2 + 1.0)
    m = P / (gamma1 + gamma2 + 2.0) ** 2
    ratio = math.sqrt((gamma1 + 1.0) * (gamma2 + 1.0) * (gamma1 + gamma2 + 1.0)) / P
    total = 0.0
    for p in range(1, k + 1):
        for q in range(1, l + 1):
            g = gaussian_cov(p, q)
            if g:
                total += comb(k, p) * comb(l, q) * ratio ** (p + q) * float(g)
    return m ** (k + l) * total


def jacobi_symmetric_cov(k: int, l: int) -> Fraction:
    """alpha[k][l] at gamma1 = gamma2 = 0 (support [0, 1]), exact."""
    _check_kl(k, l)
    if k == 0 or l == 0:
        return Fraction(0)
    return (Fraction(4) ** (1 - k - l) * Fraction(k * l, k + l)
            * comb(2 * k - 1, k) * comb(2 * l - 1, l))


def correlation(table: CovarianceTable, k: int, l: int) -> float:
    """Correlation coefficient alpha[k][l] / sqrt(alpha[k][k] alpha[l][l])."""
    vkk, vll = table.value(k, k), table.value(l, l)
    if vkk <= 0 or vll <= 0:
        raise ValueError(f"zero diagonal entry at ({k},{k}) or ({l},{l})")
    return float(table.value(k, l)) / math.sqrt(float(vkk) * float(vll))


def correlation_zero_edge(k: int, l: int) -> float:
    """Limiting correlation 2 sqrt(kl)/(k+l) for supports [0, 2L] (L-free)."""
    if k < 1 or l < 1:
        raise ValueError("correlation needs k, l >= 1")
    return 2.0 * math.sqrt(k * l) / (k + l)


def correlation_symmetric(k: int, l: int) -> float:
    """Limiting correlation for symmetric supports: parity-gated 2 sqrt(kl)/(k+l)."""
    if k < 1 or l < 1:
        raise ValueError("correlation needs k, l >= 1")
    return 0.0 if (k - l) % 2 else 2.0 * math.sqrt(k * l) / (k + l)


def asymptotic_cov(L: float, k: int, l: int) -> float:
    """Large-order growth (2L)^(k+l)/pi * sqrt(kl)/(k+l) of the [0, 2L] table.

    Evaluated in log space so large k + l cannot overflow intermediate powers.
    """
    if L <= 0:
        raise ValueError("L must be positive")
    if k < 1 or l < 1:
        raise ValueError("asymptotic form needs k, l >= 1")
    return math.exp((k + l) * math.log(2.0 * L) + 0.5 * math.log(k * l)
                    - math.log(k + l) - math.log(math.pi))


# ---------------------------------------------------------------------------
# ensemble description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnsembleSpec:
    """One-cut ensemble: classical family or custom support/potential, plus beta."""

    kind: str
    beta: float = 1.0
    c: object = None
    gamma1: float = 0.0
    gamma2: float = 0.0
    custom_support: SupportInterval = None
    v_prime_fn: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("gaussian", "wishart", "jacobi", "custom"):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.kind == "wishart" and (self.c is None or self.c < 1):
            raise ValueError("Wishart requires c >= 1")
        if self.kind == "jacobi" and (self.gamma1 < 0 or self.gamma2 < 0):
            raise ValueError("Jacobi requires gamma1, gamma2 >= 0")
        if self.kind == "custom" and self.custom_support is None:
            raise ValueError("custom ensemble needs a support interval")

    @classmethod
    def gaussian(cls, beta: float = 1.0) -> "EnsembleSpec":
        return cls(kind="gaussian", beta=beta)

    @classmethod
    def wishart(cls, c, beta: float = 1.0) -> "EnsembleSpec":
        return cls(kind="wishart", beta=beta, c=c)

    @classmethod
    def jacobi(cls, gamma1: float, gamma2: float, beta: float = 1.0) -> "EnsembleSpec":
        return cls(kind="jacobi", beta=beta, gamma1=gamma1, gamma2=gamma2)

    @classmethod
    def custom(cls, support: SupportInterval, v_prime, beta: float = 1.0) -> "EnsembleSpec":
        return cls(kind="custom", beta=beta, custom_support=support, v_prime_fn=v_prime)

    def support(self) -> SupportInterval:
        if self.kind == "gaussian":
            return SupportInterval(-2, 2)
        if self.kind == "wishart":
            return wishart_support(self.c)
        if self.kind == "jacobi":
            return jacobi_edges(self.gamma1, self.gamma2)
        return self.custom_support

    def cov(self, k: int, l: int):
        """Beta-free alpha[k][l] through the family's closed form."""
        if self.kind == "gaussian":
            return gaussian_cov(k, l)
        if self.kind == "wishart":
            return wishart_cov(self.c, k, l)
        if self.kind == "jacobi":
            if self.gamma1 == 0 and self.gamma2 == 0:
                return jacobi_symmetric_cov(k, l)  # support [0, 1], exact
            return jacobi_cov(self.gamma1, self.gamma2, k, l)
        return shift_cov(self.custom_support, k, l)

    def moment(self, k: int):
        """Closed-form limiting moment where one exists (Gaussian/Wishart)."""
        if self.kind == "gaussian":
            return gaussian_moment(k)
        if self.kind == "wishart":
            return wishart_moment(self.c, k)
        raise ValueError(f"no closed-form moments for kind {self.kind!r}; "
                         "use density.equilibrium_moment")

    def describe(self) -> dict:
        out = {"kind": self.kind, "beta": self.beta}
        if self.kind == "wishart":
            out["c"] = float(self.c)
        if self.kind == "jacobi":
            out["gamma1"], out["gamma2"] = self.gamma1, self.gamma2
        if self.kind == "custom":
            s = self.support()
            out["support"] = [float(s.a), float(s.b)]
        return out


def covariance_table(source, order: int) -> CovarianceTable:
    """Closed-form covariance table for an ensemble or a bare support.

    EnsembleSpec inputs use their family's formula (provenance "closed-form");
    SupportInterval inputs use the centring formula (provenance
    "shift-formula").  Entries are exact where the inputs are exact.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if isinstance(source, SupportInterval):
        entries = [[shift_cov(source, k, l) if k and l else
                    (Fraction(0) if source.is_exact else 0.0)
                    for l in range(order + 1)] for k in range(order + 1)]
        return CovarianceTable(support=source, order=order, entries=entries,
                               exact=source.is_exact, provenance="shift-formula")
    if not isinstance(source, EnsembleSpec):
        raise TypeError("source must be an EnsembleSpec or SupportInterval")
    exact = (source.kind == "gaussian"
             or (source.kind == "wishart" and _exact(source.c))
             or (source.kind == "jacobi" and source.gamma1 == 0 and source.gamma2 == 0))
    entries = [[source.cov(k, l) if k and l else (Fraction(0) if exact else 0.0)
                for l in range(order + 1)] for k in range(order + 1)]
    return CovarianceTable(support=source.support(), order=order, entries=entries,
                           exact=exact, provenance="closed-form")
