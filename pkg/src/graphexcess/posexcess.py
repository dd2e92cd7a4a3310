"""Minimum-degree-2 (multi)cores and families with all components of positive excess.

Multicores have the half-edge closed form

    MCore(z, w) = sum_m (2m)! [x^{2m}] e^{z (e^x - 1 - x)} w^m / (2^m m!),

so the number with n vertices and m edges is (2m)! [x^{2m}] (e^x - 1 - x)^n.
Planting rooted trees on a multicore produces every multigraph without tree
components, and dividing out multi-unicycles isolates the families whose
components all have positive excess:

    MG_k^{>0}(z) = (2k-1)!! [x^{2k}] e^{-MV(z)} / (1 - T(z) s(x))^{k + 1/2},

with s(x) = (e^x - 1 - x)/(x^2/2).  The simple-graph analogue removes loops
and double edges by inclusion-exclusion over patchworks:

    SG_k^{>0}(z) = sum_{l=0}^{k} (2(k-l)-1)!! [x^{2(k-l)}]
                   P_l(T e^x, -1) e^{-V(z)} / (1 - T(z) s(x))^{k-l+1/2}.

Each slice is computed along two independent routes (direct series
extraction here, and evaluation of the t-rational forms at T(z)) which must
agree coefficient-by-coefficient.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import NonIntegralCount
from .patchworks import patchwork_excess_poly, patchwork_eval_at_series, patchwork_gf
from .ratmath import Q, QONE, QZERO, as_int, binomial_rational, double_factorial_odd, rat
from .series import ExactSeries, tree_series, unicycle_series
from .trational import mgpos_tform

__all__ = [
    "mcore_coeff",
    "core_coeff",
    "mcore_series",
    "core_series",
    "mgpos_slices",
    "sgpos_slices",
    "mgpos_series",
    "sgpos_series",
    "mgpos_count",
    "sgpos_count",
    "ie_series_count",
]


# -- small exact x-polynomial helpers (coefficients are rationals) -----------


def _xp_mul(a: list, b: list, trunc: int) -> list:
    out = [QZERO] * (trunc + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > trunc:
            continue
        for j in range(min(len(b) - 1, trunc - i) + 1):
            if b[j] != 0:
                out[i + j] += ai * b[j]
    return out


def _stirling_ge2(trunc: int) -> list:
    """x-series of e^x - 1 - x."""
    return [QZERO, QZERO] + [rat(1, math.factorial(j)) for j in range(2, trunc + 1)]


def mcore_coeff(n: int, m: int) -> int:
    """Number of multigraphs with min degree >= 2, n vertices, m labeled edges:
    (2m)! [x^{2m}] (e^x - 1 - x)^n."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    if n == 0:
        return 1 if m == 0 else 0
    trunc = 2 * m
    base = _stirling_ge2(trunc)
    pw = [QONE] + [QZERO] * trunc
    e = n
    b = base
    while e:
        if e & 1:
            pw = _xp_mul(pw, b, trunc)
        e >>= 1
        if e:
            b = _xp_mul(b, b, trunc)
    return as_int(pw[trunc] * math.factorial(2 * m))


@lru_cache(maxsize=None)
def _mcore_row_table(n_max: int, m_max: int) -> tuple:
    """mcore_coeff(n, m) for all n <= n_max, m <= m_max, built incrementally."""
    trunc = 2 * m_max
    base = _stirling_ge2(trunc)
    rows = [tuple(1 if m == 0 else 0 for m in range(m_max + 1))]
    pw = [QONE] + [QZERO] * trunc
    for _n in range(1, n_max + 1):
        pw = _xp_mul(pw, base, trunc)
        rows.append(
            tuple(as_int(pw[2 * m] * math.factorial(2 * m)) for m in range(m_max + 1))
        )
    return tuple(rows)


def mcore_series(k: int, order: int) -> ExactSeries:
    """MCore_k(z): the excess-k slice of the multicore generating function."""
    table = _mcore_row_table(order, order + max(k, 0))
    coeffs = []
    for n in range(order + 1):
        m = n + k
        if m < 0:
            coeffs.append(QZERO)
            continue
        c = rat(table[n][m], math.factorial(n) * 2**m * math.factorial(m))
        coeffs.append(c)
    return ExactSeries(coeffs, order)


@lru_cache(maxsize=None)
def _core_patch_rows(nz: int, nw: int) -> tuple:
    """rows[a][j] = [z^a w^j] P(z, w, -1), the signed patchwork table."""
    table = patchwork_gf(nz, nw)
    out = []
    for a in range(nz + 1):
        row = []
        for j in range(nw + 1):
            poly = table.u_poly(a, j)
            acc = QZERO
            for c in reversed(poly):
                acc = acc * Q(-1) + c
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def core_coeff(n: int, m: int) -> int:
    """Number of simple graphs with min degree >= 2, n vertices, m edges.

    Inclusion-exclusion over marked patchworks:
    Core(z,w) = sum_m (2m)! [x^{2m}] P(z e^x, w, -1) e^{z(e^x-1-x)} w^m/(2^m m!).
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    if n == 0:
        return 1 if m == 0 else 0
    trunc = 2 * m
    rows = _core_patch_rows(n, m)
    stirl = _stirling_ge2(trunc)
    spow = [[QONE] + [QZERO] * trunc]
    for _ in range(n):
        spow.append(_xp_mul(spow[-1], stirl, trunc))
    total = QZERO
    for mp in range(m + 1):
        weight = rat(math.factorial(2 * mp), 2**mp * math.factorial(mp))
        # [x^{2mp}] sum_a rows[a][m-mp] e^{a x} (e^x-1-x)^{n-a} / (n-a)!
        acc = QZERO
        for a in range(n + 1):
            pa = rows[a][m - mp]
            if pa == 0:
                continue
            inner = QZERO
            sp = spow[n - a]
            for i in range(2 * mp + 1):
                if sp[2 * mp - i] != 0:
                    inner += rat(a**i, math.factorial(i)) * sp[2 * mp - i]
            acc += pa * inner / math.factorial(n - a)
        total += weight * acc
    total *= math.factorial(n)
    if total.denominator != 1:
        raise NonIntegralCount(f"core count at ({n}, {m}) is {total}")
    return int(total.numerator)


def core_series(k: int, order: int) -> ExactSeries:
    """Core_k(z): the excess-k slice of the simple-core generating function."""
    coeffs = []
    for n in range(order + 1):
        m = n + k
        if m < 0 or m > n * (n - 1) // 2:
            coeffs.append(QZERO)
            continue
        coeffs.append(rat(core_coeff(n, m), math.factorial(n)))
    return ExactSeries(coeffs, order)


# -- shared expansion machinery ------------------------------------------------


def _neg_binom(s: Fraction, i: int):
    """[u^i] (1 - u)^(-s) = binom(s + i - 1, i)."""
    return binomial_rational(Fraction(s) + i - 1, i)


@lru_cache(maxsize=None)
def _sigma_powers(x_order: int) -> tuple:
    """Powers of sigma(x) = (e^x-1-x)/(x^2/2) - 1 = sum_{j>=1} 2 x^j/(j+2)!."""
    sigma = [QZERO] + [rat(2, math.factorial(j + 2)) for j in range(1, x_order + 1)]
    pows = [[QONE] + [QZERO] * x_order]
    for _ in range(x_order):
        pows.append(_xp_mul(pows[-1], sigma, x_order))
    return tuple(tuple(p) for p in pows)


@lru_cache(maxsize=None)
def _tree_context(order: int):
    """Shared series data at a given truncation order."""
    t = tree_series(order)
    one = ExactSeries.one(order)
    one_minus_t = one - t
    inv_1mt = one_minus_t.inverse()
    _u, v, mv = unicycle_series(order)
    return {
        "T": t,
        "inv_1mt": inv_1mt,
        "sqrt_1mt": one_minus_t.pow_rational(Fraction(1, 2)),
        "V": v,
        "MV": mv,
    }


def _geometric_powers(base: ExactSeries, count: int) -> list:
    out = [ExactSeries.one(base.order)]
    for _ in range(count):
        out.append(out[-1] * base)
    return out


@lru_cache(maxsize=None)
def mgpos_slices(k_max: int, order: int) -> tuple:
    """MG_l^{>0}(z) for l = 0..k_max, truncated at the given z-order.

    Expands (1 - T s(x))^{-(l+1/2)} = (1-T)^{-(l+1/2)} (1 - u)^{-(l+1/2)}
    with u = T/(1-T) sigma(x), so every slice is a finite positive-power
    combination of shared building blocks.
    """
    ctx = _tree_context(order)
    sig = _sigma_powers(2 * k_max)
    r_pows = _geometric_powers(ctx["T"] * ctx["inv_1mt"], 2 * k_max)
    inv_pows = _geometric_powers(ctx["inv_1mt"], k_max)
    out = [ExactSeries.one(order)]
    for k in range(1, k_max + 1):
        s = Fraction(2 * k + 1, 2)
        acc = ExactSeries.zero(order)
        for i in range(2 * k + 1):
            c = sig[i][2 * k]
            if c == 0:
                continue
            acc = acc + r_pows[i] * (_neg_binom(s, i) * c)
        out.append(acc * inv_pows[k] * double_factorial_odd(k))
    return tuple(out)


@lru_cache(maxsize=None)
def _marking_exp_series(x_order: int, order: int) -> tuple:
    """exp(-(T/2)(e^x-1) - (T^2/4)(e^{2x}-1)) as x-coefficients, each a z-series.

    This combines e^{-V} (sans its sqrt(1-T) factor) with the excess-0
    patchwork factor P_0(T e^x, -1).
    """
    ctx = _tree_context(order)
    t = ctx["T"]
    t2 = t * t
    arg = [ExactSeries.zero(order)]
    for j in range(1, x_order + 1):
        fj = math.factorial(j)
        arg.append(t * rat(-1, 2 * fj) + t2 * rat(-(2**j), 4 * fj))
    out = [ExactSeries.one(order)]
    for j in range(1, x_order + 1):
        s = ExactSeries.zero(order)
        for i in range(1, j + 1):
            if not arg[i].is_zero():
                s = s + arg[i] * out[j - i] * i
        out.append(s * rat(1, j))
    return tuple(out)


@lru_cache(maxsize=None)
def _sgpos_engine(k_max: int, order: int) -> tuple:
    """Per-l contributions: engine[l][x_order_slot] reused by all k-slices.

    Returns phi[l] = x-coefficient lists of E(T,x) * P_l^{>0}(T e^x, -1).
    """
    ctx = _tree_context(order)
    t_pows = _geometric_powers(ctx["T"], max(3 * k_max, 1))
    e_x = _marking_exp_series(2 * k_max, order)
    phis = []
    for l in range(k_max + 1):
        x_order = 2 * (k_max - l)
        p_l = patchwork_eval_at_series(
            patchwork_excess_poly(l), -1, t_pows, x_order
        )
        phi = []
        for j in range(x_order + 1):
            s = ExactSeries.zero(order)
            for i in range(j + 1):
                if not p_l[i].is_zero():
                    s = s + p_l[i] * e_x[j - i]
            phi.append(s)
        phis.append(tuple(phi))
    return tuple(phis)


def _sgpos_single(k: int, order: int, l_max: int, k_engine: int) -> ExactSeries:
    """The l-truncated slice sum for SG_k^{>0} (full when l_max >= k)."""
    ctx = _tree_context(order)
    sig = _sigma_powers(2 * k)
    r_pows = _geometric_powers(ctx["T"] * ctx["inv_1mt"], 2 * k)
    inv_pows = _geometric_powers(ctx["inv_1mt"], k)
    phis = _sgpos_engine(k_engine, order)
    total = ExactSeries.zero(order)
    for l in range(min(k, l_max) + 1):
        kl = k - l
        s = Fraction(2 * kl + 1, 2)
        phi = phis[l]
        acc = ExactSeries.zero(order)
        for i in range(2 * kl + 1):
            inner = ExactSeries.zero(order)
            for j in range(i, 2 * kl + 1):
                c = sig[i][j]
                if c != 0:
                    inner = inner + phi[2 * kl - j] * c
            if not inner.is_zero():
                acc = acc + r_pows[i] * inner * _neg_binom(s, i)
        total = total + acc * inv_pows[kl] * double_factorial_odd(kl)
    return total


@lru_cache(maxsize=None)
def sgpos_slices(k_max: int, order: int) -> tuple:
    """SG_l^{>0}(z) for l = 0..k_max at the given z-order."""
    return tuple(
        _sgpos_single(k, order, k, k_max) for k in range(k_max + 1)
    )


def mgpos_series(k: int, order: int, route: str = "extraction") -> ExactSeries:
    """MG_k^{>0}(z) by the requested route.

    extraction: direct x-extraction on z-series (route B).
    tform:      evaluate the t-rational form at T(z) (route A).
    mcore:      e^{-MV(z)} * MCore_k(T(z)) (decomposition route).
    """
    if route == "extraction":
        return mgpos_slices(k, order)[k]
    ctx = _tree_context(order)
    if route == "tform":
        return mgpos_tform(k).evaluate(ctx["T"])
    if route == "mcore":
        mc = mcore_series(k, order)
        t_pows = _geometric_powers(ctx["T"], order)
        acc = ExactSeries.zero(order)
        for n in range(order + 1):
            c = mc.coeff(n)
            if c != 0:
                acc = acc + t_pows[n] * c
        return acc * ctx["sqrt_1mt"]
    raise ValueError(f"unknown route {route!r}")


def sgpos_series(k: int, order: int, route: str = "extraction") -> ExactSeries:
    """SG_k^{>0}(z) by the requested route (extraction or core)."""
    if route == "extraction":
        return sgpos_slices(k, order)[k]
    if route == "core":
        ctx = _tree_context(order)
        cs = core_series(k, order)
        t_pows = _geometric_powers(ctx["T"], order)
        acc = ExactSeries.zero(order)
        for n in range(order + 1):
            c = cs.coeff(n)
            if c != 0:
                acc = acc + t_pows[n] * c
        # divide by e^{V}
        return acc * (-ctx["V"]).exp()
    raise ValueError(f"unknown route {route!r}")


def mgpos_count(n: int, k: int, route: str = "extraction") -> int:
    """Number of multigraphs with n vertices, excess k, all components of
    positive excess: n! 2^{n+k} (n+k)! [z^n] MG_k^{>0}."""
    c = mgpos_series(k, n, route).coeff(n)
    c = c * math.factorial(n) * 2 ** (n + k) * math.factorial(n + k)
    if c.denominator != 1:
        raise NonIntegralCount(f"MG^>0 count at ({n}, {k}) is {c}")
    return int(c.numerator)


def sgpos_count(n: int, k: int, route: str = "extraction") -> int:
    """Number of simple graphs with n vertices, excess k, all components of
    positive excess: n! [z^n] SG_k^{>0}."""
    c = sgpos_series(k, n, route).coeff(n) * math.factorial(n)
    if c.denominator != 1:
        raise NonIntegralCount(f"SG^>0 count at ({n}, {k}) is {c}")
    return int(c.numerator)


def ie_series_count(n: int, m: int, d: int) -> int:
    """Truncated inclusion-exclusion count over positive-excess multigraphs:
    only marked patchworks of excess < d enter, with sign (-1)^parts.

    Equals the l < d partial sum of the SG^{>0} slice formula, in multigraph
    counting convention.
    """
    k = m - n
    if k < 0:
        return 0
    gf = _sgpos_single(k, n, min(d - 1, k), k)
    c = gf.coeff(n) * math.factorial(n) * 2**m * math.factorial(m)
    if c.denominator != 1:
        raise NonIntegralCount(f"IE count at ({n}, {m}, d={d}) is {c}")
    return int(c.numerator)
