"""Exact truncated power series and the classic tree/unicycle series.

A series is a vector of rational coefficients for z^0..z^N with an
explicit truncation order N.  Arithmetic is exact; mixing two orders
truncates to the smaller one (coefficient extraction [z^n] only ever
consumes the usable prefix, so shrinking is the natural convention).

The module also provides the standard generating functions of labeled
tree-like structures:

    T(z) = z e^{T(z)}          rooted labeled trees, [z^n] T = n^{n-1}/n!
    U(z) = T - T^2/2           unrooted trees (Cayley: n! [z^n] U = n^{n-2})
    MV(z) = (1/2) log(1/(1-T)) multi-unicycles (cycle of rooted trees,
                               loops and double edges allowed)
    V(z) = MV - T/2 - T^2/4    simple unicycles

and the table of all-graph counts binom(n(n-1)/2, m).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .errors import ConstantTermViolation
from .ratmath import Q, QONE, QZERO, rat

__all__ = [
    "ExactSeries",
    "tree_series",
    "tree_series_newton",
    "unicycle_series",
    "graphs_gf_slice",
    "egf_counts",
]


class ExactSeries:
    """Univariate truncated power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Q(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            else:
                cs += [QZERO] * (order + 1 - len(cs))
        if not cs:
            raise ValueError("a series needs at least the z^0 coefficient")
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "ExactSeries":
        return cls([QZERO], order)

    @classmethod
    def one(cls, order: int) -> "ExactSeries":
        return cls([QONE], order)

    @classmethod
    def identity(cls, order: int) -> "ExactSeries":
        """The series z."""
        return cls([QZERO, QONE], order)

    # -- basic accessors ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        """[z^n] of the series; n must not exceed the truncation order."""
        if n < 0:
            return QZERO
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "ExactSeries":
        return ExactSeries(self.coeffs, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"ExactSeries([{head}{tail}]; order={self.order})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- ring operations ---------------------------------------------------

    def _common_order(self, other: "ExactSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, ExactSeries):
            n = self._common_order(other)
            return ExactSeries(
                [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
            )
        return self + ExactSeries([other], self.order)

    __radd__ = __add__

    def __neg__(self):
        return ExactSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, ExactSeries):
            n = self._common_order(other)
            return ExactSeries(
                [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)]
            )
        return self - ExactSeries([other], self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactSeries):
            n = self._common_order(other)
            a, b = self.coeffs, other.coeffs
            out = [QZERO] * (n + 1)
            for i in range(n + 1):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(n + 1 - i):
                    bj = b[j]
                    if bj != 0:
                        out[i + j] += ai * bj
            return ExactSeries(out)
        q = Q(other)
        return ExactSeries([c * q for c in self.coeffs])

    __rmul__ = __mul__

    def shift(self, j: int) -> "ExactSeries":
        """Multiply by z^j, keeping the truncation order."""
        if j < 0:
            raise ValueError("negative shift")
        return ExactSeries([QZERO] * j + list(self.coeffs), self.order)

    def inverse(self) -> "ExactSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order
        inv0 = 1 / a[0]
        out = [QZERO] * (n + 1)
        out[0] = inv0
        for m in range(1, n + 1):
            s = QZERO
            for k in range(1, m + 1):
                if a[k] != 0:
                    s += a[k] * out[m - k]
            out[m] = -inv0 * s
        return ExactSeries(out)

    def __truediv__(self, other):
        if isinstance(other, ExactSeries):
            return self * other.inverse()
        return self * (1 / Q(other))

    # -- transcendental operations ------------------------------------------

    def exp(self) -> "ExactSeries":
        """exp of a series with zero constant term, by the recurrence b' = a' b."""
        a = self.coeffs
        if a[0] != 0:
            raise ConstantTermViolation("exp requires constant term 0")
        n = self.order
        out = [QZERO] * (n + 1)
        out[0] = QONE
        for m in range(1, n + 1):
            s = QZERO
            for k in range(1, m + 1):
                if a[k] != 0:
                    s += k * a[k] * out[m - k]
            out[m] = s / m
        return ExactSeries(out)

    def log(self) -> "ExactSeries":
        """log of a series with constant term 1, by the recurrence a' = f'/f."""
        f = self.coeffs
        if f[0] != 1:
            raise ConstantTermViolation("log requires constant term 1")
        n = self.order
        out = [QZERO] * (n + 1)
        for m in range(1, n + 1):
            s = QZERO
            for k in range(1, m):
                if f[m - k] != 0 and out[k] != 0:
                    s += k * out[k] * f[m - k]
            out[m] = f[m] - s / m
        return ExactSeries(out)

    def exp_by_powers(self) -> "ExactSeries":
        """exp via the truncated sum of a^i/i!; cross-check route for exp()."""
        a = self.coeffs
        if a[0] != 0:
            raise ConstantTermViolation("exp requires constant term 0")
        out = ExactSeries.one(self.order)
        term = ExactSeries.one(self.order)
        for i in range(1, self.order + 1):
            term = term * self * rat(1, i)
            out = out + term
        return out

    def log_by_powers(self) -> "ExactSeries":
        """log via the truncated sum of (-1)^{i+1} (f-1)^i / i."""
        if self.coeffs[0] != 1:
            raise ConstantTermViolation("log requires constant term 1")
        u = self - 1
        out = ExactSeries.zero(self.order)
        term = ExactSeries.one(self.order)
        for i in range(1, self.order + 1):
            term = term * u
            out = out + term * rat((-1) ** (i + 1), i)
        return out

    def pow_rational(self, s) -> "ExactSeries":
        """f**s for rational s.

        Integer s works for any invertible f (binary powering); fractional s
        requires constant term 1 and uses exp(s log f).
        """
        s = Fraction(s)
        if s.denominator == 1:
            e = int(s)
            if e < 0:
                return self.inverse().pow_rational(-e)
            out = ExactSeries.one(self.order)
            base = self
            while e:
                if e & 1:
                    out = out * base
                e >>= 1
                if e:
                    base = base * base
            return out
        if self.coeffs[0] != 1:
            raise ConstantTermViolation("fractional powers require constant term 1")
        return (self.log() * Q(s.numerator, s.denominator)).exp()


def egf_counts(series: ExactSeries, n_max: int | None = None) -> list:
    """n! [z^n] for n = 0..n_max, as exact rationals."""
    n_max = series.order if n_max is None else n_max
    return [series.coeff(n) * math.factorial(n) for n in range(n_max + 1)]


def tree_series(order: int) -> ExactSeries:
    """Rooted labeled trees T(z) = z e^{T(z)}, via the closed form n^{n-1}/n!."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [QZERO] + [
        rat(n ** (n - 1), math.factorial(n)) for n in range(1, order + 1)
    ]
    return ExactSeries(coeffs[: order + 1], order)


def tree_series_newton(order: int) -> ExactSeries:
    """T(z) by Newton iteration on F(T) = T - z e^T, doubling precision.

    Independent of the closed form; the two must agree coefficient-wise.
    """
    t = ExactSeries([QZERO, QONE], min(1, order))
    prec = t.order
    while prec < order:
        prec = min(2 * prec + 1, order)
        t = t.truncate(prec)
        e = t.exp().shift(1)  # z e^T
        # Newton step: t <- t - (t - z e^T) / (1 - z e^T)
        t = t - (t - e) * (ExactSeries.one(prec) - e).inverse()
    return t.truncate(order)


def unicycle_series(order: int) -> tuple[ExactSeries, ExactSeries, ExactSeries]:
    """Return (U, V, MV): trees, unicycles, multi-unicycles.

    U = T - T^2/2; MV = (1/2) log(1/(1-T)); V = MV - T/2 - T^2/4.
    """
    t = tree_series(order)
    t2 = t * t
    u = t - t2 * rat(1, 2)
    one = ExactSeries.one(order)
    mv = (one - t).log() * rat(-1, 2)
    v = mv - t * rat(1, 2) - t2 * rat(1, 4)
    return u, v, mv


def graphs_gf_slice(n_max: int, m_max: int) -> list[list[int]]:
    """table[n][m] = binom(n(n-1)/2, m): labeled simple graphs with n vertices, m edges."""
    if n_max < 0 or m_max < 0:
        raise ValueError("n_max and m_max must be >= 0")
    return [
        [math.comb(n * (n - 1) // 2, m) for m in range(m_max + 1)]
        for n in range(n_max + 1)
    ]

