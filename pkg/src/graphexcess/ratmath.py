"""Exact rational/integer arithmetic backend.

All counting data in this package is exact: integers are arbitrary
precision and every non-integer coefficient is a rational in lowest
terms.  gmpy2 supplies fast bignum types when available; otherwise the
standard library is used.  Both backends satisfy ``numbers.Rational``,
print identically (``"p/q"``, or ``"p"`` for integers) and interoperate
with ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as Q, mpz as Z
except ImportError:  # pragma: no cover
    Q = Fraction
    Z = int

#: rational zero/one, reused to avoid repeated construction
QZERO = Q(0)
QONE = Q(1)


def rat(num, den=1):
    """Exact rational num/den (den > 0 after normalization)."""
    return Q(num, den)


def is_integral(x) -> bool:
    return x.denominator == 1


def as_int(x) -> int:
    """Convert an integral rational to int, raising if it is not integral."""
    if x.denominator != 1:
        raise ValueError(f"expected an integer, got {x}")
    return int(x.numerator)


def binomial_rational(a, i: int):
    """Generalized binomial coefficient C(a, i) for rational a, integer i >= 0."""
    if i < 0:
        return QZERO
    out = QONE
    for j in range(i):
        out *= Q(a) - j
    return out / math.factorial(i)


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! = (2k)!/(2^k k!), the number of perfect matchings on 2k points.

    Returns 1 for k = 0 (empty product).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    out = 1
    for j in range(1, 2 * k, 2):
        out *= j
    return out


def rational_pow(c, s) -> "Q":
    """c**s for rational c and rational s, exact or ValueError.

    Supports integer s for any nonzero c, and half-integer s when the
    relevant square root of c is rational.
    """
    c = Q(c)
    s = Fraction(s)
    if s.denominator == 1:
        e = int(s)
        if e >= 0:
            return c**e
        if c == 0:
            raise ZeroDivisionError("0 to a negative power")
        return 1 / c**(-e)
    if s.denominator == 2:
        num = math.isqrt(int(c.numerator))
        den = math.isqrt(int(c.denominator))
        if num * num != c.numerator or den * den != c.denominator:
            raise ValueError(f"{c} has no rational square root")
        root = Q(num, den)
        return rational_pow(root, 2 * s)
    raise ValueError(f"unsupported exponent {s}")
