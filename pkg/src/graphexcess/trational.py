"""The coefficient algebra for kernel extractions: Q[t] localized at (1-t).

Every generating function of positive-excess families lives, after the
substitution t = T(z), in the module of elements

    p(t) * (1 - t)^(-h/2),    p a rational polynomial, h an integer,

and the large-powers integrand is an x-series over this algebra.  Working
here instead of in full rational functions keeps the pole-order bound
(pole order <= 3k at excess k) checkable, which catches extraction bugs
that a generic field would silently absorb.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import HalfPoleResidue, MixedPoleParity, NonRationalLeadingPower
from .ratmath import (
    Q,
    QONE,
    QZERO,
    binomial_rational,
    double_factorial_odd,
    rat,
    rational_pow,
)
from .series import ExactSeries

__all__ = [
    "TRational",
    "XSeries",
    "kernel_base",
    "txs_pow",
    "xs_exp",
    "marking_exp",
    "mgpos_tform",
]


def _poly_mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [QZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj != 0:
                out[i + j] += ai * bj
    return tuple(out)


def _poly_div_one_minus_t(p: tuple) -> tuple:
    """Divide p(t) by (1-t); requires p(1) = 0."""
    q = [QZERO] * (len(p) - 1)
    acc = QZERO
    for i in range(len(p) - 1):
        acc = p[i] + acc
        q[i] = acc
    if (q[-1] if q else QZERO) != -p[-1]:
        raise ValueError("polynomial not divisible by (1-t)")
    return tuple(q)


def _one_minus_t_pow(j: int) -> tuple:
    """(1-t)^j as a coefficient tuple, j >= 0."""
    out = (QONE,)
    for _ in range(j):
        out = _poly_mul(out, (QONE, -QONE))
    return out


class TRational:
    """p(t) * (1-t)^(-half_pole/2) in canonical form.

    Canonical: p is not divisible by (1-t) unless p = 0 (then half_pole = 0).
    half_pole may be negative, encoding positive powers of (1-t).
    """

    __slots__ = ("numer", "half_pole")

    def __init__(self, numer, half_pole: int = 0):
        p = [Q(c) for c in numer]
        while p and p[-1] == 0:
            p.pop()
        h = half_pole
        while p and sum(p) == 0:
            p = list(_poly_div_one_minus_t(tuple(p)))
            h -= 2
        if not p:
            h = 0
        self.numer = tuple(p)
        self.half_pole = h

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "TRational":
        return cls((), 0)

    @classmethod
    def one(cls) -> "TRational":
        return cls((QONE,), 0)

    @classmethod
    def from_rational(cls, c) -> "TRational":
        return cls((Q(c),), 0)

    @classmethod
    def t_power(cls, a: int, c=1) -> "TRational":
        """c * t^a."""
        return cls((QZERO,) * a + (Q(c),), 0)

    @classmethod
    def sqrt_one_minus_t(cls) -> "TRational":
        return cls((QONE,), -1)

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.numer

    @property
    def pole_order(self) -> int:
        """h/2 for even half_pole; raises HalfPoleResidue if half-integer."""
        if self.half_pole % 2 != 0:
            raise HalfPoleResidue(
                f"half-integer pole (1-t)^(-{self.half_pole}/2) where an integer "
                "pole order was required"
            )
        return self.half_pole // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, TRational):
            return NotImplemented
        return self.numer == other.numer and self.half_pole == other.half_pole

    def __hash__(self):
        return hash((self.numer, self.half_pole))

    def __repr__(self) -> str:
        return f"TRational({list(self.numer)}, half_pole={self.half_pole})"

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "TRational") -> "TRational":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if (self.half_pole - other.half_pole) % 2 != 0:
            raise MixedPoleParity(
                f"cannot add parities {self.half_pole} and {other.half_pole}"
            )
        h = max(self.half_pole, other.half_pole)
        pa = _poly_mul(self.numer, _one_minus_t_pow((h - self.half_pole) // 2))
        pb = _poly_mul(other.numer, _one_minus_t_pow((h - other.half_pole) // 2))
        n = max(len(pa), len(pb))
        pa += (QZERO,) * (n - len(pa))
        pb += (QZERO,) * (n - len(pb))
        return TRational([x + y for x, y in zip(pa, pb)], h)

    def __neg__(self) -> "TRational":
        return TRational([-c for c in self.numer], self.half_pole)

    def __sub__(self, other: "TRational") -> "TRational":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TRational):
            if self.is_zero() or other.is_zero():
                return TRational.zero()
            return TRational(
                _poly_mul(self.numer, other.numer), self.half_pole + other.half_pole
            )
        c = Q(other)
        if c == 0:
            return TRational.zero()
        return TRational([x * c for x in self.numer], self.half_pole)

    __rmul__ = __mul__

    def shift_pole(self, j: int) -> "TRational":
        """Multiply by (1-t)^(-j): raise the pole order by j."""
        return TRational(self.numer, self.half_pole + 2 * j)

    def normalized_numerator(self, pole: int) -> tuple:
        """Numerator when displayed over (1-t)^pole exactly.

        The element must have even half_pole with pole order <= pole; the
        returned polynomial may then be divisible by (1-t).
        """
        m = self.pole_order
        if m > pole:
            raise ValueError(f"pole order {m} exceeds requested display pole {pole}")
        if self.is_zero():
            return ()
        return _poly_mul(self.numer, _one_minus_t_pow(pole - m))

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, t_series: ExactSeries) -> ExactSeries:
        """Substitute a series (typically T(z)) for t."""
        order = t_series.order
        acc = ExactSeries.zero(order)
        for c in reversed(self.numer):
            acc = acc * t_series + c
        if self.half_pole != 0:
            one_minus = ExactSeries.one(order) - t_series
            acc = acc * one_minus.pow_rational(Fraction(-self.half_pole, 2))
        return acc

    def t_expansion(self, degree: int) -> list:
        """Plain t-series coefficients of the value up to t^degree (even half_pole only)."""
        m = self.pole_order
        out = [QZERO] * (degree + 1)
        for i, pi in enumerate(self.numer):
            if pi == 0:
                continue
            if m > 0:
                for j in range(i, degree + 1):
                    out[j] += pi * math.comb(j - i + m - 1, j - i)
            elif m == 0:
                if i <= degree:
                    out[i] += pi
            else:
                for j in range(i, min(degree, i - m) + 1):
                    out[j] += pi * math.comb(-m, j - i) * (-1) ** (j - i)
        return out

    def egf_count_at_tree(self, n: int):
        """n! [z^n] of self evaluated at the rooted-tree series T(z).

        Lagrange inversion on T = z e^T:  [z^n] H(T) = (1/n) [t^{n-1}] H'(t) e^{nt},
        so the whole coefficient needs only O(n) exact operations.  Requires an
        integer pole order.
        """
        if n == 0:
            return self.numer[0] if self.numer and self.pole_order <= 0 else (
                self.t_expansion(0)[0] if self.numer else QZERO
            )
        c = self.t_expansion(n)
        total = QZERO
        ff = 1  # (n-1)! / (n-1-j)!
        pw = n ** (n - 1)  # n^{n-1-j}
        for j in range(n):
            hj = (j + 1) * c[j + 1]
            if hj != 0:
                total += hj * ff * pw
            ff *= n - 1 - j
            if j < n - 1:
                pw //= n
        return total


class XSeries:
    """Truncated series in x with TRational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, truncation: int | None = None):
        cs = list(coeffs)
        if truncation is not None:
            if len(cs) > truncation + 1:
                cs = cs[: truncation + 1]
            else:
                cs += [TRational.zero()] * (truncation + 1 - len(cs))
        if not cs:
            raise ValueError("an x-series needs at least the x^0 coefficient")
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, truncation: int) -> "XSeries":
        return cls([], truncation)

    @classmethod
    def one(cls, truncation: int) -> "XSeries":
        return cls([TRational.one()], truncation)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> TRational:
        if i < 0:
            return TRational.zero()
        if i > self.truncation:
            raise IndexError(f"x^{i} beyond truncation {self.truncation}")
        return self.coeffs[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, XSeries):
            return NotImplemented
        n = min(self.truncation, other.truncation)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"XSeries(truncation={self.truncation})"

    def __add__(self, other: "XSeries") -> "XSeries":
        n = min(self.truncation, other.truncation)
        return XSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> "XSeries":
        return XSeries([-c for c in self.coeffs])

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, XSeries):
            n = min(self.truncation, other.truncation)
            out = [TRational.zero()] * (n + 1)
            for i in range(n + 1):
                a = self.coeffs[i]
                if a.is_zero():
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return XSeries(out)
        if isinstance(other, TRational):
            return XSeries([c * other for c in self.coeffs])
        return XSeries([c * other for c in self.coeffs])

    __rmul__ = __mul__


def xs_exp(a: XSeries) -> XSeries:
    """exp of an x-series whose x^0 coefficient is zero (finite sum)."""
    if not a.coeffs[0].is_zero():
        raise ValueError("xs_exp requires zero constant coefficient")
    out = XSeries.one(a.truncation)
    term = XSeries.one(a.truncation)
    for i in range(1, a.truncation + 1):
        term = term * a * rat(1, i)
        out = out + term
    return out


def txs_pow(base: XSeries, exponent) -> XSeries:
    """base**s for a half-integer s, by binomial series.

    The constant coefficient of base must be a monomial c*(1-t)^p with c a
    nonzero rational; the result's constant coefficient is c^s (1-t)^{p s},
    which must stay inside the algebra.
    """
    s = Fraction(exponent)
    lead = base.coeffs[0]
    if lead.is_zero() or len(lead.numer) != 1:
        raise NonRationalLeadingPower(
            "constant coefficient must be a nonzero monomial c*(1-t)^p"
        )
    c = lead.numer[0]
    h = lead.half_pole
    hs = h * s
    if hs.denominator != 1:
        raise NonRationalLeadingPower(
            f"(1-t)^({Fraction(-h, 2)}*{s}) leaves the half-integer pole lattice"
        )
    try:
        cs = rational_pow(c, s)
    except (ValueError, ZeroDivisionError) as exc:
        raise NonRationalLeadingPower(str(exc)) from exc
    lead_inv = TRational((1 / c,), -h)
    u = base * lead_inv - XSeries.one(base.truncation)
    out = XSeries.one(base.truncation)
    term = XSeries.one(base.truncation)
    for i in range(1, base.truncation + 1):
        term = term * u
        coef = binomial_rational(s, i)
        if coef != 0:
            out = out + term * coef
    return out * TRational((cs,), int(hs))


def kernel_base(k: int, truncation: int | None = None) -> XSeries:
    """The x-series of 1 - t (e^x - 1 - x)/(x^2/2) to order x^{2k} (or truncation).

    Its constant coefficient is 1 - t, and [x^j] = -2t/(j+2)! for j >= 1.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    trunc = 2 * k if truncation is None else truncation
    coeffs = [TRational((QONE,), -2)]
    for j in range(1, trunc + 1):
        coeffs.append(TRational((QZERO, rat(-2, math.factorial(j + 2))), 0))
    return XSeries(coeffs, trunc)


def marking_exp(truncation: int) -> XSeries:
    """exp(-(t/2)(e^x - 1) - (t^2/4)(e^{2x} - 1)) as an x-series.

    This is the combined unicycle/loop/double-edge correction prefactor: the
    product of e^{-V} (with its sqrt(1-t) factor removed) and the excess-0
    patchwork generating function evaluated at (t e^x, -1).
    """
    arg = [TRational.zero()]
    for j in range(1, truncation + 1):
        fj = math.factorial(j)
        arg.append(TRational((QZERO, rat(-1, 2 * fj), rat(-(2**j), 4 * fj)), 0))
    return xs_exp(XSeries(arg, truncation))


def mgpos_tform(k: int) -> TRational:
    """Multigraphs of excess k with all components of positive excess, as
    an element MK_k-like form in t:

        (2k-1)!! [x^{2k}] (1-t)^{1/2} (1 - t (e^x-1-x)/(x^2/2))^{-(k+1/2)}.

    The half-integer poles must cancel (HalfPoleResidue otherwise) and the
    pole order never exceeds 3k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return TRational.one()
    base = kernel_base(k)
    power = txs_pow(base, Fraction(-(2 * k + 1), 2))
    val = power.coeff(2 * k) * TRational.sqrt_one_minus_t()
    val = val * double_factorial_odd(k)
    if val.half_pole % 2 != 0:
        raise HalfPoleResidue(f"excess {k}: residual half pole {val.half_pole}")
    if val.pole_order > 3 * k:
        raise HalfPoleResidue(
            f"excess {k}: pole order {val.pole_order} exceeds the bound {3 * k}"
        )
    return val
