"""High-precision asymptotics for connected graphs and multigraphs with
excess proportional to the number of vertices.

All formulas are driven by the saddle point of the large-powers integrand
B(z,x)^k with B = (1 - T(z)(e^x-1-x)/(x^2/2))^{-1}: lambda solves

    (lambda/2) (e^lambda + 1)/(e^lambda - 1) = k/n + 1,

a strictly increasing map of lambda, and zeta = tau e^{-tau} with
tau = T(zeta) = lambda/(e^lambda - 1).  Everything downstream (Hessian
entries, the dominant terms, the truncation diagnostics) has closed forms
in lambda and k/n; magnitudes are carried in natural-log space because the
counts overflow doubles around n = 150.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import ConvergenceFailure, InsufficientGrid, NonPositiveRatio
from .posexcess import mgpos_slices
from .ratmath import Q, QZERO, double_factorial_odd, rat
from .series import tree_series
from .trational import TRational
from .wright import star_value_at_one, wright_polys

__all__ = [
    "SaddlePoint",
    "solve_saddle",
    "saddle_identity_residuals",
    "csg_dominant_log",
    "cmg_dominant_log",
    "cmg_dominant_log_factorial",
    "dominant_theta_log",
    "fixed_excess_asympt",
    "log_of_integer",
    "TruncationReport",
    "truncation_report",
    "truncation_decay_ratios",
    "estimate_c1_from_residuals",
    "estimate_c1",
    "sqdk",
    "sqdk_row",
]

DEFAULT_PRECISION = 256


def _mpf_of(x):
    """Exact conversion of int/Fraction/mpq to mpf at the current precision."""
    if isinstance(x, (int,)):
        return mp.mpf(x)
    num = getattr(x, "numerator", None)
    if num is not None:
        return mp.mpf(int(x.numerator)) / mp.mpf(int(x.denominator))
    return mp.mpf(x)


def log_of_integer(value: int, precision: int = DEFAULT_PRECISION):
    """Natural log of a (possibly huge) exact integer at the given precision."""
    if value <= 0:
        raise ValueError("need a positive integer")
    with mp.workprec(precision):
        return mp.log(mp.mpf(value))


@dataclass(frozen=True)
class SaddlePoint:
    ratio: object
    lam: object
    zeta: object
    tau: object
    h11: object
    h12: object
    h22: object
    det_h: object
    precision: int
    residual: object


def _saddle_map(lam):
    # (lam/2) coth(lam/2), increasing from 1 at 0+ to infinity
    return lam / 2 * mp.coth(lam / 2)


def _saddle_map_deriv(lam):
    half = lam / 2
    return mp.coth(half) / 2 - half / (2 * mp.sinh(half) ** 2)


def solve_saddle(ratio, precision: int = DEFAULT_PRECISION) -> SaddlePoint:
    """Solve the saddle system for a given ratio k/n > 0.

    Newton from lambda_0 = 2(ratio+1), bracket-clipped with bisection
    fallback; the map is strictly increasing so convergence is guaranteed.
    The returned residual is relative and must be below 2^(-precision/2).
    """
    ratio_q = Fraction(ratio) if not isinstance(ratio, (float, mp.mpf)) else ratio
    with mp.workprec(precision + 64):
        r = _mpf_of(ratio_q) if not isinstance(ratio_q, (float, mp.mpf)) else mp.mpf(ratio_q)
        if not r > 0:
            raise NonPositiveRatio(f"ratio must be positive, got {ratio}")
        target = r + 1
        lo = mp.mpf("1e-6")
        hi = 2 * (r + 1) + 2
        lam = min(max(2 * (r + 1), lo), hi)
        tol = mp.mpf(2) ** (-(precision + 16))
        converged = False
        for _ in range(precision + 64):
            f = _saddle_map(lam) - target
            step = f / _saddle_map_deriv(lam)
            new = lam - step
            if not (lo < new < hi):
                # bisection fallback keeps the iterate inside the bracket
                if f > 0:
                    hi = lam
                else:
                    lo = lam
                new = (lo + hi) / 2
            if abs(new - lam) <= tol * abs(new):
                lam = new
                converged = True
                break
            lam = new
        if not converged:
            raise ConvergenceFailure(f"saddle solve did not converge for ratio {ratio}")
        residual = abs(_saddle_map(lam) - target) / target
        if not residual < mp.mpf(2) ** (-precision // 2):
            raise ConvergenceFailure(
                f"saddle residual {residual} above tolerance for ratio {ratio}"
            )
        tau = lam / mp.expm1(lam)
        zeta = tau * mp.exp(-tau)
        inv = 1 / r
        h11 = inv / (1 - tau) ** 2 + inv**2
        h12 = 2 / (1 - tau) + 2 * inv
        h22 = lam * (1 - tau) * inv + 2 * lam
        det_h = (
            lam
            * (lam / 2 * inv - 1)
            * (lam**2 / 4 * inv**2 - inv - 1)
            / (lam / 2 - r) ** 2
        )
        return SaddlePoint(r, lam, zeta, tau, h11, h12, h22, det_h, precision, residual)


def saddle_identity_residuals(sp: SaddlePoint) -> dict:
    """Relative residuals of the five closed-form saddle identities."""
    with mp.workprec(sp.precision + 64):
        lam, tau, r = sp.lam, sp.tau, sp.ratio
        rel = lambda a, b: abs(a - b) / max(abs(a), abs(b), mp.mpf(1))
        kernel = 1 - tau * (mp.expm1(lam) - lam) / (lam**2 / 2)
        return {
            "tau_from_lambda": rel(tau, lam / mp.expm1(lam)),
            "tau_linear": rel(tau, r + 1 - lam / 2),
            "exp_lambda": rel(mp.exp(lam), 1 + lam / (r + 1 - lam / 2)),
            "kernel_value": rel(kernel, 2 * r / lam),
            "det_closed_form": rel(sp.det_h, sp.h11 * sp.h22 - sp.h12**2),
        }


def _log_double_factorial_odd(k: int):
    # log (2k-1)!! = log (2k)! - k log 2 - log k!
    return mp.loggamma(2 * k + 1) - k * mp.log(2) - mp.loggamma(k + 1)


def csg_dominant_log(n: int, k: int, precision: int = DEFAULT_PRECISION):
    """log of the dominant term D_{n,k} for connected simple graphs:

        D = n^{n+k}/sqrt(2 pi k) * lambda^{-k} / ((k/n+1)^2 - lambda^2/4)^{n/2}
            * (lambda/2 - k/n) e^{-(1 + k/(2n)) lambda}
            / sqrt(lambda^2/4 * n/k - k/n - 1).
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    sp = solve_saddle(Fraction(k, n), precision)
    with mp.workprec(precision + 64):
        r, lam = sp.ratio, sp.lam
        inv = 1 / r
        return (
            (n + k) * mp.log(n)
            - mp.log(2 * mp.pi * k) / 2
            - k * mp.log(lam)
            - n / 2 * mp.log((r + 1) ** 2 - lam**2 / 4)
            + mp.log(lam / 2 - r)
            - (1 + r / 2) * lam
            - mp.log(lam**2 / 4 * inv - r - 1) / 2
        )


def cmg_dominant_log(n: int, k: int, precision: int = DEFAULT_PRECISION):
    """log of the dominant term for connected multigraphs (simplified form):

        (n+k)^{n+k} n^{n+k} 2^{n+k} e^{-n-k} lambda^{-k}
        / ((k/n+1)^2 - lambda^2/4)^{n/2}
        * (lambda/2 - k/n) sqrt(n/k + 1) / sqrt(lambda^2/4 n/k - k/n - 1).
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    sp = solve_saddle(Fraction(k, n), precision)
    with mp.workprec(precision + 64):
        r, lam = sp.ratio, sp.lam
        inv = 1 / r
        return (
            (n + k) * (mp.log(n + k) + mp.log(n) + mp.log(2) - 1)
            - k * mp.log(lam)
            - n / 2 * mp.log((r + 1) ** 2 - lam**2 / 4)
            + mp.log(lam / 2 - r)
            + mp.log(inv + 1) / 2
            - mp.log(lam**2 / 4 * inv - r - 1) / 2
        )


def cmg_dominant_log_factorial(n: int, k: int, precision: int = DEFAULT_PRECISION):
    """The multigraph dominant term before Stirling simplification:

        2^{n+k} (n+k)! n! (2k-1)!! / (2 pi k sqrt(det H) zeta^n lambda^{2k})
        * e^{-MV(zeta)} / (1 - T(zeta)(e^l-1-l)/(l^2/2))^{k+1/2},

    with e^{-MV(zeta)} = sqrt(lambda/2 - k/n).  Used to cross-check the
    simplified closed form (they differ by Stirling remainders only).
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    sp = solve_saddle(Fraction(k, n), precision)
    with mp.workprec(precision + 64):
        r, lam = sp.ratio, sp.lam
        kernel = 2 * r / lam
        return (
            (n + k) * mp.log(2)
            + mp.loggamma(n + k + 1)
            + mp.loggamma(n + 1)
            + _log_double_factorial_odd(k)
            - mp.log(2 * mp.pi * k)
            - mp.log(sp.det_h) / 2
            - n * mp.log(sp.zeta)
            - 2 * k * mp.log(lam)
            + mp.log(lam / 2 - r) / 2
            - (k + mp.mpf(1) / 2) * mp.log(kernel)
        )


def dominant_theta_log(n: int, k: int, precision: int = DEFAULT_PRECISION):
    """log of the order-of-growth reference
    (1/n) n! (2k-1)!! B(zeta,lambda)^k / (zeta^n lambda^{2k})."""
    sp = solve_saddle(Fraction(k, n), precision)
    with mp.workprec(precision + 64):
        kernel = 2 * sp.ratio / sp.lam  # = 1/B(zeta, lambda)
        return (
            -mp.log(n)
            + mp.loggamma(n + 1)
            + _log_double_factorial_odd(k)
            - k * mp.log(kernel)
            - n * mp.log(sp.zeta)
            - 2 * k * mp.log(sp.lam)
        )


def _log_gamma_three_halves_k(k: int):
    """log Gamma(3k/2), exactly via sqrt(pi) rationals at half-integers."""
    if (3 * k) % 2 == 0:
        return mp.loggamma(3 * k // 2)
    # Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi) with m = (3k-1)/2
    m = (3 * k - 1) // 2
    ratio = Fraction(math.factorial(2 * m), 4**m * math.factorial(m))
    return mp.log(_mpf_of(ratio)) + mp.log(mp.pi) / 2


def fixed_excess_asympt(
    n: int,
    k: int,
    family: str = "csg",
    star_value=None,
    precision: int = DEFAULT_PRECISION,
):
    """log of the leading fixed-excess approximation to the connected count.

    For graphs:  K*_k(1) sqrt(pi)/Gamma(3k/2) * n^n * (n/2)^{(3k-1)/2};
    for multigraphs the same slice-level form times 2^{n+k} (n+k)!.
    (Classical displays sometimes show (n/e)^n here; the n^n normalization is
    the one consistent with Cayley/unicycle values and with convergence to
    the exact counts, and is what this function implements.)
    """
    if k < 1:
        raise ValueError("fixed-excess form needs k >= 1")
    if family not in ("csg", "cmg"):
        raise ValueError("family must be csg or cmg")
    if star_value is None:
        star_value = star_value_at_one(family, k)
    with mp.workprec(precision + 64):
        out = (
            mp.log(_mpf_of(star_value))
            + mp.log(mp.pi) / 2
            - _log_gamma_three_halves_k(k)
            + n * mp.log(n)
            + mp.mpf(3 * k - 1) / 2 * (mp.log(n) - mp.log(2))
        )
        if family == "cmg":
            out += (n + k) * mp.log(2) + mp.loggamma(n + k + 1)
        return out


# -- truncated expansion diagnostics (multigraph family) ------------------------


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _mk_qr_element(q: int, r: int) -> TRational:
    """MK_{q,r}: sum over compositions of r into q-1 positive parts of the
    product of the positive-excess numerator forms (pole order <= 3r)."""
    if q == 1:
        return TRational.one() if r == 0 else TRational.zero()
    if r < q - 1:
        return TRational.zero()
    tables = wright_polys(max(r, 1))
    acc = TRational.zero()
    for comp in _compositions(r, q - 1):
        prod = TRational.one()
        for kj in comp:
            prod = prod * tables.element("mg", kj)
        acc = acc + prod
    return acc


@dataclass(frozen=True)
class TruncationReport:
    n: int
    k: int
    d: int
    terms: dict  # (q, r) -> exact rational value of the summand
    relative: dict  # (q, r) -> float magnitude relative to the (1, 0) term
    truncated_log: object  # log of the (q, r)-truncated approximation
    exact_log: object | None

    def truncated_sum(self):
        total = QZERO
        for (q, _r), v in self.terms.items():
            total += v if q % 2 == 1 else -v
        return total


def truncation_report(
    n: int,
    k: int,
    d: int,
    precision: int = DEFAULT_PRECISION,
    exact_count: int | None = None,
) -> TruncationReport:
    """Exact evaluation of the (q, r)-truncated connected-multigraph expansion

        CMG ~ 2^{n+k}(n+k)! sum_{q=1}^{d+4} (-1)^{q+1} sum_{r=q-1}^{d+3}
              n! [z^n] MG^{>0}_{k-r}(z) MK_{q,r}(T)/(1-T)^{3r},

    reporting each summand and its size relative to the (1,0) term.
    """
    if k < 1 or n < 1:
        raise ValueError("need n, k >= 1")
    if d < 0 or d > 4:
        raise ValueError("d must be in 0..4")
    order = n
    slices = mgpos_slices(k, order)
    t = tree_series(order)
    nfact = math.factorial(n)
    terms = {}
    for q in range(1, d + 5):
        for r in range(q - 1, d + 4):
            if k - r < 1:
                continue
            el = _mk_qr_element(q, r)
            if el.is_zero():
                continue
            series = slices[k - r] * el.evaluate(t)
            value = series.coeff(n) * nfact
            terms[(q, r)] = value
    base = terms.get((1, 0))
    relative = {}
    for key, v in terms.items():
        relative[key] = float(abs(Q(v) / base)) if base else float("nan")
    report_total = QZERO
    for (q, _r), v in terms.items():
        report_total += v if q % 2 == 1 else -v
    with mp.workprec(precision + 64):
        pref = (n + k) * mp.log(2) + mp.loggamma(n + k + 1)
        tlog = pref + mp.log(_mpf_of(report_total)) if report_total > 0 else mp.ninf
        elog = log_of_integer(exact_count, precision) if exact_count else None
    return TruncationReport(n, k, d, terms, relative, tlog, elog)


def truncation_decay_ratios(n: int, k: int, d: int) -> dict:
    """relative-size shrink factors per r when (n, k) doubles at fixed ratio:
    ratio[(q, r)] = rel_{2n,2k}(q,r) / rel_{n,k}(q,r), expected < 1 for r >= 1."""
    small = truncation_report(n, k, d)
    big = truncation_report(2 * n, 2 * k, d)
    out = {}
    for key, rel_small in small.relative.items():
        if key in big.relative and key != (1, 0) and rel_small > 0:
            out[key] = big.relative[key] / rel_small
    return out


# -- empirical first-order correction -------------------------------------------


def estimate_c1_from_residuals(n_grid, residuals):
    """Extrapolate c1 from r_n ~ c1/n + c2/n^2 + ...

    Uses a_n = n r_n = c1 + c2/n and eliminates the 1/n term on consecutive
    pairs; returns (estimate, pair_estimates).  Needs at least 3 grid points.
    """
    if len(n_grid) < 3 or len(residuals) != len(n_grid):
        raise InsufficientGrid("need at least 3 grid points with residuals")
    pairs = []
    for (n1, r1), (n2, r2) in zip(
        zip(n_grid, residuals), zip(n_grid[1:], residuals[1:])
    ):
        a1, a2 = n1 * r1, n2 * r2
        pairs.append((a2 * n2 - a1 * n1) / (n2 - n1))
    return pairs[-1], pairs


def estimate_c1(
    family: str,
    ratio,
    n_grid,
    counts,
    precision: int = DEFAULT_PRECISION,
):
    """Empirical c1 for exact counts against the dominant term.

    counts[i] must be the exact connected count at (n_grid[i], k = ratio*n).
    Returns (estimate, pair_estimates, residuals).
    """
    ratio = Fraction(ratio)
    if len(n_grid) < 3:
        raise InsufficientGrid("need at least 3 grid sizes")
    dominant = csg_dominant_log if family == "csg" else cmg_dominant_log
    residuals = []
    with mp.workprec(precision + 64):
        for n, c in zip(n_grid, counts):
            k = ratio * n
            if k.denominator != 1:
                raise ValueError(f"ratio {ratio} does not give integer excess at n={n}")
            logd = dominant(n, int(k), precision)
            residuals.append(mp.exp(log_of_integer(c, precision) - logd) - 1)
    est, pairs = estimate_c1_from_residuals(list(n_grid), residuals)
    return est, pairs, residuals


# -- capped double-factorial composition sums -----------------------------------


def sqdk(q: int, d: int, k: int):
    """S_{q,d,k} = sum over q-part compositions of k with parts in [0, k-d]
    of prod (2 k_j - 1)!! / (2k - 1)!!, exactly."""
    if not (1 <= q and 0 <= k):
        raise ValueError("need q >= 1 and k >= 0")
    cap = k - d
    if cap < 0:
        return QZERO
    seq = [double_factorial_odd(j) for j in range(cap + 1)]
    cur = [0] * (k + 1)
    cur[0] = 1
    for _ in range(q):
        new = [0] * (k + 1)
        for i, ci in enumerate(cur):
            if ci:
                for j in range(min(cap, k - i) + 1):
                    new[i + j] += ci * seq[j]
        cur = new
    return rat(cur[k], double_factorial_odd(k))


def sqdk_row(k: int, d: int) -> list:
    """[S_{q,d,k} for q = 1..k], sharing the convolution prefix."""
    cap = k - d
    if cap < 0:
        return [QZERO] * k
    seq = [double_factorial_odd(j) for j in range(cap + 1)]
    df = double_factorial_odd(k)
    cur = [0] * (k + 1)
    cur[0] = 1
    out = []
    for _q in range(1, k + 1):
        new = [0] * (k + 1)
        for i, ci in enumerate(cur):
            if ci:
                for j in range(min(cap, k - i) + 1):
                    new[i + j] += ci * seq[j]
        cur = new
        out.append(rat(cur[k], df))
    return out
