"""Exact counts of connected graphs and multigraphs by vertices and excess.

Three independent routes are implemented and must agree wherever they are
all defined:

  excess-gf   The composition route: a graph whose components all have
              positive excess is a set of connected positive-excess graphs,
              so CSG_k = [y^k] log(1 + sum_l SG_l^{>0} y^l), and similarly
              for multigraphs with the 2^{n+k} (n+k)! labeled-edge factor.
              Evaluated either on truncated series or, for small k and
              large n, through the polynomial-in-T form.

  recurrence  Classical inclusion-exclusion on the component containing
              vertex 1 (independent of all generating-function machinery).

  brute-force Raw enumeration (bruteforce module), for tiny instances.

Connected counts use the conventions: a graph with n vertices and excess k
has m = n + k edges; trees are k = -1 (Cayley: n^{n-2} of them) and
unicycles are k = 0.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import InvalidExcess, NonIntegralCount
from .posexcess import mgpos_slices, sgpos_slices
from .ratmath import Q, Z, rat
from .series import ExactSeries, unicycle_series
from .wright import wright_polys

__all__ = [
    "CountRecord",
    "csg_exact",
    "cmg_exact",
    "csg_recurrence_oracle",
    "cmg_recurrence_oracle",
    "csg_composition_sum",
    "cmg_composition_sum",
    "projection_factor_check",
    "total_graphs",
    "total_multigraphs",
    "save_count_table",
    "load_count_table",
    "cache_dir_from_env",
]

CACHE_ENV_VAR = "GRAPHEXCESS_CACHE_DIR"

#: switch from series evaluation to the polynomial-in-T form above this n
_SERIES_N_LIMIT = 128
#: polynomial route is only built for small excess
_TFORM_K_LIMIT = 12


@dataclass(frozen=True)
class CountRecord:
    family: str  # csg | cmg | sgpos | mgpos
    n: int
    k: int
    count: int
    route: str  # excess-gf | recurrence | brute-force

    def __post_init__(self):
        if self.count < 0:
            raise NonIntegralCount(f"negative count in {self}")


def total_graphs(n: int, m: int) -> int:
    """All labeled simple graphs: binom(n(n-1)/2, m)."""
    return math.comb(n * (n - 1) // 2, m)


def total_multigraphs(n: int, m: int) -> int:
    """All labeled multigraphs with m labeled oriented edges: n^{2m}."""
    return n ** (2 * m)


# -- excess-gf route -----------------------------------------------------------


def _k_bucket(k: int) -> int:
    return next((b for b in (3, 6, 12) if b >= k), k)


def _order_bucket(n: int) -> int:
    return max(16, (n + 15) // 16 * 16)


def _ylog_counts(slices, multigraph: bool) -> list:
    """[y^k] log(1 + sum_l slices[l] y^l), slice l given and returned as the
    integer count array  A_l[n] = n! (2^{n+l} (n+l)! if multigraph) [z^n] F_l.

    Keeping everything in integers (the labeled-product convolution carries
    binomial weights) makes the quadratic composition log cheap even at
    excess ~100.  The division by k in the log recurrence is exact.
    """
    kmax = len(slices) - 1
    order = len(slices[0]) - 1
    binom = math.comb

    def conv(a, la, b, lb):
        out = [Z(0)] * (order + 1)
        for n in range(order + 1):
            s = Z(0)
            for n1 in range(n + 1):
                x = a[n1]
                y = b[n - n1]
                if x and y:
                    w = binom(n, n1)
                    if multigraph:
                        w *= binom(n + la + lb, n1 + la)
                    s += w * x * y
            out[n] = s
        return out

    out = [[Z(0)] * (order + 1) for _ in range(kmax + 1)]
    for k in range(1, kmax + 1):
        acc = [Z(v) * k for v in slices[k]]
        for j in range(1, k):
            c = conv(out[j], j, slices[k - j], k - j)
            for n in range(order + 1):
                acc[n] -= j * c[n]
        for n in range(order + 1):
            q, r = divmod(acc[n], k)
            if r:
                raise NonIntegralCount(f"log recurrence not divisible at k={k}, n={n}")
            acc[n] = q
        out[k] = acc
    return out


def _slice_count_arrays(k_bucket: int, order: int, multigraph: bool) -> list:
    slices = mgpos_slices(k_bucket, order) if multigraph else sgpos_slices(k_bucket, order)
    arrays = []
    for l, s in enumerate(slices):
        row = []
        for n in range(order + 1):
            c = s.coeff(n) * math.factorial(n)
            if multigraph:
                c = c * Z(2) ** (n + l) * math.factorial(n + l)
            if c.denominator != 1:
                raise NonIntegralCount(f"slice l={l} coefficient n={n} is {c}")
            row.append(Z(c.numerator))
        arrays.append(row)
    return arrays


@lru_cache(maxsize=None)
def csg_slices(k_bucket: int, order: int) -> tuple:
    """Connected-count arrays: csg_slices(...)[k][n] = CSG_{n,k} for k <= k_bucket."""
    arrays = _slice_count_arrays(k_bucket, order, False)
    return tuple(tuple(int(v) for v in row) for row in _ylog_counts(arrays, False))


@lru_cache(maxsize=None)
def cmg_slices(k_bucket: int, order: int) -> tuple:
    """Connected-count arrays: cmg_slices(...)[k][n] = CMG_{n,k} for k <= k_bucket."""
    arrays = _slice_count_arrays(k_bucket, order, True)
    return tuple(tuple(int(v) for v in row) for row in _ylog_counts(arrays, True))


def _count_from_series(coeff, n: int, k: int, multigraph: bool) -> int:
    c = coeff * math.factorial(n)
    if multigraph:
        c = c * Z(2) ** (n + k) * math.factorial(n + k)
    if c.denominator != 1:
        raise NonIntegralCount(f"count at (n={n}, k={k}) is {c}")
    return int(c.numerator)


def _gf_count(n: int, k: int, family: str) -> int:
    multigraph = family == "cmg"
    if n > _SERIES_N_LIMIT and k <= _TFORM_K_LIMIT:
        tables = wright_polys(_k_bucket(k))
        el = tables.element(family, k)
        c = el.egf_count_at_tree(n)
        if multigraph:
            c = c * Z(2) ** (n + k) * math.factorial(n + k)
        if c.denominator != 1:
            raise NonIntegralCount(f"count at (n={n}, k={k}) is {c}")
        return int(c.numerator)
    kb = _k_bucket(k)
    slices = cmg_slices(kb, _order_bucket(n)) if multigraph else csg_slices(kb, _order_bucket(n))
    return slices[k][n]


# -- recurrence oracles -------------------------------------------------------


def _csg_packed_table(n_max: int, m_max: int) -> list:
    """Connected-graph counts c(n, m) for n <= n_max, m <= m_max.

    The recurrence

        c(n,m) = binom(n(n-1)/2, m)
                 - sum_{s=1}^{n-1} binom(n-1, s-1) sum_j c(s,j) binom((n-s)(n-s-1)/2, m-j)

    convolves polynomials in an edge-counting variable, so each row is packed
    into one big integer with fixed-width slots and the inner double sum
    becomes a single bignum multiplication.
    """
    emax = n_max * (n_max - 1) // 2
    vmax = max(math.comb(emax, m) for m in range(0, min(m_max, emax) + 1))
    slot = 2 * vmax.bit_length() + n_max + m_max.bit_length() + 8
    slot = (slot + 63) // 64 * 64
    width = m_max + 1
    mask_all = (Z(1) << (slot * width)) - 1

    def pack(values):
        acc = Z(0)
        for v in reversed(values):
            acc = (acc << slot) | Z(v)
        return acc

    def unpack(big):
        out = []
        m = (Z(1) << slot) - 1
        for _ in range(width):
            out.append(int(big & m))
            big >>= slot
        return out

    a_packed = []
    for n in range(n_max + 1):
        e = n * (n - 1) // 2
        a_packed.append(pack([math.comb(e, m) for m in range(width)]))
    c_packed = [Z(0), pack([1] + [0] * (width - 1))]
    for n in range(2, n_max + 1):
        s_acc = Z(0)
        for s in range(1, n):
            s_acc += math.comb(n - 1, s - 1) * ((c_packed[s] * a_packed[n - s]) & mask_all)
        c_packed.append((a_packed[n] - (s_acc & mask_all)) & mask_all)
    return [unpack(c_packed[n]) if n else [1] + [0] * (width - 1) for n in range(n_max + 1)]


@lru_cache(maxsize=8)
def _csg_table_cached(n_max: int, m_max: int) -> tuple:
    return tuple(tuple(row) for row in _csg_packed_table(n_max, m_max))


def csg_recurrence_oracle(n: int, m: int) -> int:
    """Connected simple graphs with n vertices and m edges, by the classical
    component-of-vertex-1 recurrence (independent oracle)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if m > n * (n - 1) // 2:
        return 0
    nb = max(8, n)
    mb = max(8, m)
    return _csg_table_cached(nb, mb)[n][m]


def _cmg_table(n_max: int, m_max: int) -> list:
    c = [[0] * (m_max + 1) for _ in range(n_max + 1)]
    binom = math.comb
    for n in range(1, n_max + 1):
        for m in range(m_max + 1):
            total = Z(n) ** (2 * m)
            for s in range(1, n):
                pref = binom(n - 1, s - 1)
                base = n - s
                for j in range(m + 1):
                    cj = c[s][j]
                    if cj:
                        total -= pref * binom(m, j) * cj * Z(base) ** (2 * (m - j))
            c[n][m] = int(total)
    return c


@lru_cache(maxsize=8)
def _cmg_table_cached(n_max: int, m_max: int) -> tuple:
    return tuple(tuple(row) for row in _cmg_table(n_max, m_max))


def cmg_recurrence_oracle(n: int, m: int) -> int:
    """Connected multigraphs with n vertices and m labeled oriented edges,
    by inclusion-exclusion on the component of vertex 1 (independent oracle)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    nb = max(8, n)
    mb = max(8, m)
    return _cmg_table_cached(nb, mb)[n][m]


# -- public exact counts -------------------------------------------------------


def csg_exact(
    n: int, k: int, route: str = "excess-gf", budget: int | None = None
) -> CountRecord:
    """Number of connected graphs with n vertices and excess k (m = n + k)."""
    if k < -1:
        raise InvalidExcess("no connected graph has excess below -1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if route == "recurrence":
        return CountRecord("csg", n, k, csg_recurrence_oracle(n, n + k), route)
    if route == "brute-force":
        from .bruteforce import oracle_count

        cnt = oracle_count("graph", n, n + k, lambda g: g.is_connected(), budget)
        return CountRecord("csg", n, k, cnt, route)
    if route != "excess-gf":
        raise ValueError(f"unknown route {route!r}")
    if n + k > n * (n - 1) // 2:
        return CountRecord("csg", n, k, 0, route)
    if k == -1:
        cnt = 1 if n <= 2 else n ** (n - 2)
        return CountRecord("csg", n, k, cnt, route)
    if k == 0:
        _u, v, _mv = unicycle_series(n)
        return CountRecord(
            "csg", n, k, _count_from_series(v.coeff(n), n, k, False), route
        )
    return CountRecord("csg", n, k, _gf_count(n, k, "csg"), route)


def cmg_exact(
    n: int, k: int, route: str = "excess-gf", budget: int | None = None
) -> CountRecord:
    """Number of connected multigraphs with n vertices and excess k.

    Multigraph counting convention: vertices and edges both labeled, edges
    oriented; the count is n! 2^{n+k} (n+k)! [z^n] CMG_k(z).
    """
    if k < -1:
        raise InvalidExcess("no connected multigraph has excess below -1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if route == "recurrence":
        return CountRecord("cmg", n, k, cmg_recurrence_oracle(n, n + k), route)
    if route == "brute-force":
        from .bruteforce import oracle_count

        cnt = oracle_count("multigraph", n, n + k, lambda g: g.is_connected(), budget)
        return CountRecord("cmg", n, k, cnt, route)
    if route != "excess-gf":
        raise ValueError(f"unknown route {route!r}")
    if k == -1:
        cnt = 1 if n == 1 else Z(2) ** (n - 1) * math.factorial(n - 1) * n ** (n - 2)
        return CountRecord("cmg", n, k, int(cnt), route)
    if k == 0:
        _u, _v, mv = unicycle_series(n)
        return CountRecord(
            "cmg", n, k, _count_from_series(mv.coeff(n), n, k, True), route
        )
    return CountRecord("cmg", n, k, _gf_count(n, k, "cmg"), route)


# -- literal composition sums (third cross-check at tiny excess) ---------------


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _composition_sum(slices, n: int, k: int) -> Q:
    acc = Q(0)
    for q in range(1, k + 1):
        sign = rat((-1) ** (q + 1), q)
        for comp in _compositions(k, q):
            prod = ExactSeries.one(n)
            for kj in comp:
                prod = prod * slices[kj]
            acc += sign * prod.coeff(n)
    return acc


def csg_composition_sum(n: int, k: int) -> int:
    """CSG count via the literal sum over integer compositions (small k only)."""
    if k < 1:
        raise InvalidExcess("composition sum needs k >= 1")
    slices = sgpos_slices(k, n)
    return _count_from_series(_composition_sum(slices, n, k), n, k, False)


def cmg_composition_sum(n: int, k: int) -> int:
    """CMG count via the literal sum over integer compositions (small k only)."""
    if k < 1:
        raise InvalidExcess("composition sum needs k >= 1")
    slices = mgpos_slices(k, n)
    return _count_from_series(_composition_sum(slices, n, k), n, k, True)


# -- projection between the two models -----------------------------------------


def projection_factor_check(n: int, m: int) -> bool:
    """Erasing edge labels and orientations maps loop-free multiple-edge-free
    multigraphs onto simple graphs with fiber size exactly 2^m m!.

    Verified exhaustively: counts must satisfy
    #(clean multigraphs) = 2^m m! #(simple graphs).
    """
    from .bruteforce import oracle_count

    clean = oracle_count(
        "multigraph",
        n,
        m,
        lambda g: not g.has_loop() and not g.has_multiple_edge(),
    )
    return clean == Z(2) ** m * math.factorial(m) * total_graphs(n, m)


# -- on-disk cache for recurrence tables ----------------------------------------

CACHE_VERSION = 1


def cache_dir_from_env(override: str | None = None) -> Path | None:
    path = override or os.environ.get(CACHE_ENV_VAR)
    return Path(path) if path else None


def save_count_table(directory, family: str, n_max: int, m_max: int, rows) -> Path:
    """Persist a recurrence table as JSON with decimal-string counts."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{family}-n{n_max}-m{m_max}.json"
    payload = {
        "version": CACHE_VERSION,
        "family": family,
        "n_max": n_max,
        "m_max": m_max,
        "counts": [[str(v) for v in row] for row in rows],
    }
    path.write_text(json.dumps(payload))
    return path


def load_count_table(directory, family: str, n_max: int, m_max: int):
    """Load a cached table, or None when absent/incompatible. Lossless."""
    path = Path(directory) / f"{family}-n{n_max}-m{m_max}.json"
    if not path.exists():
        return None
    payload = json.loads(path.read_text())
    if payload.get("version") != CACHE_VERSION or payload.get("family") != family:
        return None
    if payload.get("n_max") != n_max or payload.get("m_max") != m_max:
        return None
    return [[int(v) for v in row] for row in payload["counts"]]


def recurrence_table(family: str, n_max: int, m_max: int, cache_directory=None):
    """Full recurrence table, using the on-disk cache when a directory is given."""
    if cache_directory is not None:
        cached = load_count_table(cache_directory, family, n_max, m_max)
        if cached is not None:
            return cached
    if family == "csg":
        rows = [list(r) for r in _csg_table_cached(n_max, m_max)]
    elif family == "cmg":
        rows = [list(r) for r in _cmg_table_cached(n_max, m_max)]
    else:
        raise ValueError("family must be csg or cmg")
    if cache_directory is not None:
        save_count_table(cache_directory, family, n_max, m_max, rows)
    return rows
