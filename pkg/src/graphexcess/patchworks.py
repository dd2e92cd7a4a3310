"""Generating functions of patchworks.

A patchwork is a set of distinct loop- and double-edge-subgraphs whose
union is a multigraph; it records how loops and double edges can glue
together, which is exactly the structure the inclusion-exclusion step
needs when removing them.  With u marking the number of parts, z the
vertices (exponential) and w the edges (weighted w^m/(2^m m!)), the full
generating function has the closed form

    P(z, w, u) = SG(z e^{u w/2}, SG(w, u) e^{-w} - 1) e^{-z},

where SG(z, w) = sum_n (1+w)^{binom(n,2)} z^n / n! is the all-graphs
series.  Splitting by excess gives P(z,w,u) = sum_k P_k(zw, u) w^k with

    P_0(z, u) = e^{u z/2 + u z^2/4},       P_k(z, u) = P_0(z, u) P_k^{>0}(z, u),

and P_k^{>0} (patchworks of excess k with no isolated part) is a
polynomial of z-degree exactly 3k for k >= 1.

The degree bound deserves a remark.  A glued component of excess j has at
most j + 2 vertices (a spanning structure of doubled edges forces
m >= 2(n-1)), and components have excess >= 1, so a patchwork without
isolated parts and total excess k has at most 3k vertices, attained by k
components of excess 1.  Classical displays of these polynomials stop at
z^{k+2}, which is the single-component maximum only; the multi-component
rows z^{k+3}..z^{3k} are nonzero for k >= 2 (e.g. the u^4 z^6 coefficient
of P_2^{>0} is 1/128, two glued excess-1 chains) and are required for the
inclusion-exclusion identities to reproduce exact core counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

from .ratmath import Q, QONE, QZERO, rat
from .series import ExactSeries
from .trational import TRational, XSeries

__all__ = [
    "TrivariateSlice",
    "PatchworkPoly",
    "patchwork_gf",
    "patchwork_excess_poly",
    "patchwork_eval",
    "patchwork_eval_at_series",
    "patchwork_poly_to_json",
]


# -- polynomial helpers: u-polys are tuples, w-polys are lists of u-polys/None --


def _up_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a) if a else None


def _up_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    n = max(len(a), len(b))
    out = [QZERO] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _up_trim(out)


def _up_scale(a, c):
    if a is None or c == 0:
        return None
    return _up_trim([x * c for x in a])


def _up_mul(a, b, nu):
    if a is None or b is None:
        return None
    out = [QZERO] * (min(len(a) + len(b) - 2, nu) + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > nu:
            continue
        jmax = min(len(b) - 1, nu - i)
        for j in range(jmax + 1):
            bj = b[j]
            if bj != 0:
                out[i + j] += ai * bj
    return _up_trim(out)


def _wp_mul(a, b, nw, nu):
    out = [None] * (nw + 1)
    for i, ai in enumerate(a):
        if ai is None or i > nw:
            continue
        for j in range(min(len(b) - 1, nw - i) + 1):
            p = _up_mul(ai, b[j], nu)
            if p is not None:
                out[i + j] = _up_add(out[i + j], p)
    return out


def _wp_add(a, b):
    n = max(len(a), len(b))
    out = [None] * n
    for i in range(n):
        x = a[i] if i < len(a) else None
        y = b[i] if i < len(b) else None
        out[i] = _up_add(x, y)
    return out


def _wp_scale(a, c):
    return [_up_scale(x, c) for x in a]


@dataclass(frozen=True)
class TrivariateSlice:
    """Truncated coefficient table of P(z, w, u): table[n][m] is the u-polynomial
    [z^n w^m] P, or None when zero."""

    z_order: int
    w_order: int
    table: tuple

    def u_poly(self, n: int, m: int):
        """[z^n w^m] P(z,w,u) as a u-coefficient tuple (empty when zero)."""
        p = self.table[n][m]
        return p if p is not None else ()

    def coefficient(self, n: int, m: int, p: int):
        """[u^p z^n w^m] P(z,w,u)."""
        poly = self.u_poly(n, m)
        return poly[p] if p < len(poly) else QZERO

    def count(self, n: int, m: int, p: int) -> int:
        """Number of patchworks with p parts, n vertices, m edges."""
        c = self.coefficient(n, m, p) * math.factorial(n) * 2**m * math.factorial(m)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral patchwork count at {(n, m, p)}")
        return int(c.numerator)


@dataclass(frozen=True)
class PatchworkPoly:
    """P_k^{>0}(z, u): rows[n] is the u-coefficient tuple of z^n."""

    k: int
    rows: tuple

    @property
    def z_degree(self) -> int:
        d = len(self.rows) - 1
        while d > 0 and not self.rows[d]:
            d -= 1
        return d

    def coefficient(self, n: int, j: int):
        if n >= len(self.rows) or j >= len(self.rows[n]):
            return QZERO
        return self.rows[n][j]

    def substitute_u(self, u):
        """z-coefficient list of P_k^{>0}(z, u) at a rational u."""
        u = Q(u)
        out = []
        for row in self.rows:
            acc = QZERO
            for j in reversed(range(len(row))):
                acc = acc * u + row[j]
            out.append(acc)
        return out


def _max_parts(k: int, w_order: int) -> int:
    # a part needs >= 1 edge; m edges allow <= m loops plus binom(m, 2) double edges
    return w_order + math.comb(w_order, 2)


def patchwork_gf(nz: int, nw: int, u_trunc: int | None = None) -> TrivariateSlice:
    """Exact truncated table of P(z, w, u) for z-degree <= nz, w-degree <= nw.

    u_trunc bounds the tracked u-degree; None keeps every coefficient exactly.
    """
    if nz < 0 or nw < 0:
        raise ValueError("orders must be >= 0")
    nu = u_trunc if u_trunc is not None else _max_parts(nz + nw, nw)

    # SG(w, u) e^{-w} - 1, a w-polynomial with u-poly coefficients
    sg = [None] * (nw + 1)
    for n in range(nw + 1):
        e = math.comb(n, 2)
        row = [rat(math.comb(e, j), math.factorial(n)) for j in range(min(e, nu) + 1)]
        sg[n] = _up_trim(row)
    emw = [None] * (nw + 1)
    for b in range(nw + 1):
        emw[b] = _up_trim([rat((-1) ** b, math.factorial(b))])
    su = _wp_mul(sg, emw, nw, nu)
    su[0] = None  # subtract the constant 1
    assert nw == 0 or su[1] is None, "SG(w,u) e^{-w} - 1 must have w-valuation 2"

    # powers of the double-edge block (w-valuation 2 makes this finite)
    jmax = nw // 2
    wpow = [[_up_trim([QONE])] + [None] * nw]
    for _ in range(jmax):
        wpow.append(_wp_mul(wpow[-1], su, nw, nu))

    # z-rows of SG(z e^{u w / 2}, SG(w,u) e^{-w} - 1)
    z_rows = []
    for n in range(nz + 1):
        e = math.comb(n, 2)
        g = [None] * (nw + 1)
        for j in range(min(jmax, e) + 1):
            g = _wp_add(g, _wp_scale(wpow[j], math.comb(e, j)))
        # times e^{n u w / 2}
        half = [None] * (nw + 1)
        for i in range(nw + 1):
            if i > nu:
                break
            c = rat(n, 2) ** i / math.factorial(i)
            half[i] = _up_trim([QZERO] * i + [c])
        g = _wp_mul(g, half, nw, nu)
        z_rows.append(_wp_scale(g, rat(1, math.factorial(n))))

    # multiply by e^{-z}
    table = []
    for n in range(nz + 1):
        acc = [None] * (nw + 1)
        for a in range(n + 1):
            acc = _wp_add(acc, _wp_scale(z_rows[a], rat((-1) ** (n - a), math.factorial(n - a))))
        table.append(tuple(acc))
    return TrivariateSlice(nz, nw, tuple(table))


_K_BUCKETS = (3, 6, 12)


@lru_cache(maxsize=None)
def _diagonal_table(k_bucket: int) -> TrivariateSlice:
    nz = 3 * k_bucket
    nw = 4 * k_bucket
    return patchwork_gf(nz, nw, u_trunc=math.comb(k_bucket + 2, 2))


@lru_cache(maxsize=None)
def patchwork_excess_poly(k: int) -> PatchworkPoly:
    """The polynomial P_k^{>0}(z, u), exact and complete.

    Computed as the excess-k diagonal of P(z, w, u) divided by
    P_0(z, u) = e^{u z/2 + u z^2/4}; the quotient terminates at z^{3k}
    (see the module docstring for why 3k, not k+2).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return PatchworkPoly(0, ((QONE,),))
    deg = 3 * k
    # the table's u-truncation exceeds binom(k+2,2), the exact u-degree of the
    # result, so capping every product there keeps the quotient exact
    nu = math.comb(k + 2, 2)
    bucket = next((b for b in _K_BUCKETS if b >= k), k)
    table = _diagonal_table(bucket)

    # diagonal rows [z^n w^{n+k}] P for n <= 3k
    diag = [table.u_poly(n, n + k) or None for n in range(deg + 1)]

    # z-expansion of e^{-u z/2 - u z^2/4}
    corr = [None] * (deg + 1)
    for a in range(deg + 1):
        pa = _up_trim([QZERO] * a + [rat(-1, 2) ** a / math.factorial(a)])
        for b in range((deg - a) // 2 + 1):
            pab = _up_mul(pa, _up_trim([QZERO] * b + [rat(-1, 4) ** b / math.factorial(b)]), nu)
            corr[a + 2 * b] = _up_add(corr[a + 2 * b], pab)

    rows = [None] * (deg + 1)
    for a, da in enumerate(diag):
        if da is None:
            continue
        for b in range(deg + 1 - a):
            p = _up_mul(da, corr[b], nu)
            if p is not None:
                rows[a + b] = _up_add(rows[a + b], p)

    assert rows[deg], "z-degree 3k must be attained"
    out = tuple(r if r is not None else () for r in rows[: deg + 1])
    return PatchworkPoly(k, out)


def patchwork_eval(poly: PatchworkPoly, u, truncation: int) -> XSeries:
    """P_k^{>0}(t e^x, u) as an x-series with polynomial-in-t coefficients."""
    zc = poly.substitute_u(u)
    coeffs = []
    for i in range(truncation + 1):
        fi = math.factorial(i)
        numer = [qa * rat(a**i, fi) for a, qa in enumerate(zc)]
        coeffs.append(TRational(numer, 0))
    return XSeries(coeffs, truncation)


def patchwork_eval_at_series(poly: PatchworkPoly, u, t_pows, truncation: int):
    """P_k^{>0}(T e^x, u) as a list of z-series coefficients of x^0..x^truncation.

    t_pows[a] must be the series T(z)^a.
    """
    zc = poly.substitute_u(u)
    order = t_pows[0].order
    out = []
    for i in range(truncation + 1):
        fi = math.factorial(i)
        acc = ExactSeries.zero(order)
        for a, qa in enumerate(zc):
            if qa != 0:
                acc = acc + t_pows[a] * (qa * rat(a**i, fi))
        out.append(acc)
    return out


def patchwork_poly_to_json(poly: PatchworkPoly) -> str:
    """JSON text for P_k^{>0}: one row per z-power, coefficients by u-power."""
    rows = []
    for n, row in enumerate(poly.rows):
        entries = [[j, str(c)] for j, c in enumerate(row) if c != 0]
        if entries:
            rows.append({"z": n, "u_coeffs": entries})
    return json.dumps({"k": poly.k, "rows": rows}, indent=2)
