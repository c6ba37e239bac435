"""Truncated bivariate power series with exact rational coefficients.

A :class:`BivariateSeries` of order ``K`` stores the coefficients of
``z**i * w**j`` for all ``i + j <= K`` as :class:`fractions.Fraction`.
Entries of total degree above ``K`` are unknown (truncated), never assumed
zero: every ring operation closes over order-``K`` truncations and discards
the part it cannot know.  All arithmetic is exact; nothing is ever rounded.

The scalar type is plain :class:`~fractions.Fraction` (arbitrary precision,
always in lowest terms, positive denominator), so no separate rational class
is needed.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["BivariateSeries"]

_ZERO = Fraction(0)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected (int or Fraction), got {type(x).__name__}")


class BivariateSeries:
    """Dense order-``K`` truncation of a power series in two variables."""

    __slots__ = ("order", "c")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        self.c = [[_ZERO] * (order + 1) for _ in range(order + 1)]
        if coeffs is not None:
            for (i, j), v in coeffs.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent ({i},{j})")
                if i + j > order:
                    raise ValueError(f"term ({i},{j}) exceeds truncation order {order}")
                self.c[i][j] = _as_fraction(v)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value, order: int) -> "BivariateSeries":
        return cls(order, {(0, 0): _as_fraction(value)})

    @classmethod
    def zero(cls, order: int) -> "BivariateSeries":
        return cls(order)

    # -- basic queries -----------------------------------------------------

    def coefficient(self, i: int, j: int) -> Fraction:
        """Exact coefficient of ``z**i * w**j``; defined only for i + j <= order."""
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent ({i},{j})")
        if i + j > self.order:
            raise ValueError(f"coefficient ({i},{j}) lies beyond truncation order {self.order}")
        return self.c[i][j]

    def nonzero_terms(self):
        K = self.order
        return [(i, j, self.c[i][j])
                for i in range(K + 1) for j in range(K + 1 - i) if self.c[i][j]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries) or other.order != self.order:
            return NotImplemented
        K = self.order
        return all(self.c[i][j] == other.c[i][j]
                   for i in range(K + 1) for j in range(K + 1 - i))

    __hash__ = None  # mutated during construction; not a dict key

    def __repr__(self):
        terms = [f"{v}*z^{i}*w^{j}" for i, j, v in self.nonzero_terms()]
        body = " + ".join(terms) if terms else "0"
        return f"BivariateSeries(order={self.order}: {body})"

    def _check_order(self, other: "BivariateSeries"):
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} != {other.order}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BivariateSeries):
            return self + BivariateSeries.constant(other, self.order)
        self._check_order(other)
        out = BivariateSeries(self.order)
        K = self.order
        for i in range(K + 1):
            for j in range(K + 1 - i):
                out.c[i][j] = self.c[i][j] + other.c[i][j]
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BivariateSeries(self.order)
        K = self.order
        for i in range(K + 1):
            for j in range(K + 1 - i):
                out.c[i][j] = -self.c[i][j]
        return out

    def __sub__(self, other):
        if not isinstance(other, BivariateSeries):
            return self - BivariateSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivariateSeries):
            s = _as_fraction(other)
            out = BivariateSeries(self.order)
            K = self.order
            for i in range(K + 1):
                for j in range(K + 1 - i):
                    out.c[i][j] = self.c[i][j] * s
            return out
        self._check_order(other)
        K = self.order
        out = BivariateSeries(K)
        oc = out.c
        for i1, j1, v1 in self.nonzero_terms():
            room = K - i1 - j1
            row = other.c
            for i2 in range(room + 1):
                r2 = row[i2]
                base = oc[i1 + i2]
                for j2 in range(room + 1 - i2):
                    v2 = r2[j2]
                    if v2:
                        base[j1 + j2] += v1 * v2
        return out

    __rmul__ = __mul__

    def inverse(self) -> "BivariateSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        f0 = self.c[0][0]
        if f0 == 0:
            raise ValueError("series with zero constant term has no inverse")
        K = self.order
        inv0 = Fraction(1) / f0
        g = BivariateSeries(K)
        g.c[0][0] = inv0
        terms = [(i, j, v) for i, j, v in self.nonzero_terms() if (i, j) != (0, 0)]
        for d in range(1, K + 1):
            for i in range(d + 1):
                j = d - i
                acc = _ZERO
                for p, q, v in terms:
                    if p <= i and q <= j:
                        acc += v * g.c[i - p][j - q]
                g.c[i][j] = -inv0 * acc
        return g

    def sqrt(self) -> "BivariateSeries":
        """Square root normalised to constant term 1.

        Requires the constant term to be exactly 1 (callers factor constants
        out); the result is the unique square root with constant term +1 and
        satisfies ``result * result == self`` through the truncation order.
        """
        if self.c[0][0] != 1:
            raise ValueError("series square root requires constant term exactly 1")
        K = self.order
        t = BivariateSeries(K)
        t.c[0][0] = Fraction(1)
        half = Fraction(1, 2)
        for d in range(1, K + 1):
            for i in range(d + 1):
                j = d - i
                # (t*t)_{ij} = 2 t_{ij} + sum over strictly intermediate terms
                acc = _ZERO
                for p in range(i + 1):
                    for q in range(j + 1):
                        if (p, q) == (0, 0) or (p, q) == (i, j):
                            continue
                        v = t.c[p][q]
                        if v:
                            acc += v * t.c[i - p][j - q]
                t.c[i][j] = half * (self.c[i][j] - acc)
        return t
