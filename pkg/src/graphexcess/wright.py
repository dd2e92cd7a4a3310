"""Wright polynomial tables: positive-excess and connected generating
functions in the form  polynomial(T) / (1-T)^{3k}.

For each excess k >= 1 there are polynomials MK_k, K_k, MK*_k, K*_k with

    MG_k^{>0}(z) = MK_k(T)/(1-T)^{3k},    CMG_k(z) = MK*_k(T)/(1-T)^{3k},
    SG_k^{>0}(z) = K_k(T)/(1-T)^{3k},     CSG_k(z) = K*_k(T)/(1-T)^{3k},

where T = T(z) is the rooted-tree series.  The unstarred forms come from
kernel extractions in the t-rational algebra; the starred (connected) forms
follow by the series logarithm in the excess variable, since a graph whose
components all have positive excess is a set of connected positive-excess
graphs.  Pole orders never exceed 3k, and evaluations at t = 1 drive the
fixed-excess asymptotics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import HalfPoleResidue
from .patchworks import patchwork_eval, patchwork_excess_poly
from .ratmath import Q, QONE, double_factorial_odd, rat
from .trational import (
    TRational,
    XSeries,
    kernel_base,
    marking_exp,
    mgpos_tform,
    txs_pow,
)

__all__ = [
    "sgpos_tform",
    "mgpos_tform",
    "WrightTables",
    "wright_polys",
    "star_value_at_one",
    "wright_poly_json",
]


@lru_cache(maxsize=None)
def sgpos_tform(k: int) -> TRational:
    """SG_k^{>0} as an element of the t-rational algebra.

    Sums the patchwork-corrected kernel extractions

        sum_{l=0}^{k} (2(k-l)-1)!! [x^{2(k-l)}]
            sqrt(1-t) E(t,x) P_l^{>0}(t e^x, -1) (1 - t s(x))^{-(k-l+1/2)},

    with E the combined unicycle/isolated-part prefactor.  Half poles must
    cancel and the pole order is at most 3k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return TRational.one()
    total = TRational.zero()
    sqrt1mt = TRational.sqrt_one_minus_t()
    for l in range(k + 1):
        kl = k - l
        trunc = 2 * kl
        base = kernel_base(kl, trunc)
        power = txs_pow(base, Fraction(-(2 * kl + 1), 2))
        prefac = marking_exp(trunc) * patchwork_eval(
            patchwork_excess_poly(l), -1, trunc
        )
        val = (prefac * power).coeff(trunc) * sqrt1mt
        total = total + val * double_factorial_odd(kl)
    if total.half_pole % 2 != 0:
        raise HalfPoleResidue(f"excess {k}: residual half pole {total.half_pole}")
    if total.pole_order > 3 * k:
        raise HalfPoleResidue(
            f"excess {k}: pole order {total.pole_order} exceeds the bound {3 * k}"
        )
    return total


def _ylog_slices(slices: list) -> list:
    """[y^k] log(1 + sum_l slices[l] y^l) in the t-rational algebra."""
    kmax = len(slices) - 1
    out = [TRational.zero()] * (kmax + 1)
    for k in range(1, kmax + 1):
        acc = slices[k]
        for j in range(1, k):
            acc = acc + out[j] * slices[k - j] * rat(-j, k)
        out[k] = acc
    return out


@dataclass(frozen=True)
class WrightTables:
    """Numerators over the display pole (1-t)^{3k}, per family and excess."""

    k_max: int
    mg: tuple
    sg: tuple
    cmg: tuple
    csg: tuple

    def numerator(self, family: str, k: int) -> tuple:
        """Coefficient tuple of the numerator polynomial over (1-t)^{3k}."""
        return getattr(self, family)[k]

    def element(self, family: str, k: int) -> TRational:
        """The generating-function element itself (canonical form)."""
        if k == 0:
            return TRational.one()
        return TRational(self.numerator(family, k), 6 * k)


@lru_cache(maxsize=None)
def wright_polys(k_max: int) -> WrightTables:
    """All four polynomial families for 1 <= k <= k_max.

    Entry k of each tuple is the numerator of the corresponding generating
    function displayed over (1-t)^{3k} exactly (so numerators may carry
    (1-t) factors).  Index 0 holds the constant 1.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    mg_el = [mgpos_tform(k) for k in range(k_max + 1)]
    sg_el = [sgpos_tform(k) for k in range(k_max + 1)]
    cmg_el = _ylog_slices(mg_el)
    csg_el = _ylog_slices(sg_el)
    cmg_el[0] = TRational.zero()
    csg_el[0] = TRational.zero()

    def normalize(elements):
        out = [(QONE,)]
        for k in range(1, k_max + 1):
            out.append(elements[k].normalized_numerator(3 * k))
        return tuple(out)

    return WrightTables(
        k_max,
        normalize(mg_el),
        normalize(sg_el),
        normalize(cmg_el),
        normalize(csg_el),
    )


def star_value_at_one(family: str, k: int) -> "Q":
    """K*_k(1) / MK*_k(1) (or the unstarred values): the numerator of the
    display form evaluated at t = 1, which controls fixed-excess growth."""
    tables = wright_polys(k)
    return sum(tables.numerator(family, k), Q(0))


def wright_poly_json(family: str, k: int, tables: WrightTables | None = None) -> str:
    """JSON record {"k", "family", "pole", "numerator": [rational strings]}."""
    if tables is None or tables.k_max < k:
        tables = wright_polys(k)
    numer = tables.numerator(family, k)
    return json.dumps(
        {
            "k": k,
            "family": family,
            "pole": 3 * k,
            "numerator": [str(c) for c in numer],
        }
    )
