"""Exhaustive small-instance enumeration: the ground-truth oracle.

Multigraphs follow the labeled model: n labeled vertices, m labeled
oriented edges, so the raw objects with m edges are exactly the n^{2m}
sequences ((v_1,w_1), ..., (v_m,w_m)) and iterating them *is* the count
(no isomorphism reduction -- labeled counting needs none).  Simple graphs
are subsets of the binom(n,2) vertex pairs.

Everything here is deliberately independent of the generating-function
machinery so that agreements are meaningful.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import BudgetExceeded

__all__ = [
    "SmallMultigraph",
    "SmallGraph",
    "enumerate_multigraphs",
    "enumerate_graphs",
    "oracle_count",
    "ld_set",
    "kernel_of",
    "patchwork_count_brute",
    "ie_signed_sum_brute",
    "ie_truncated_check",
]

GRAPH_VERTEX_BUDGET = 7
MULTIGRAPH_SEQUENCE_BUDGET = 10**8


@dataclass(frozen=True)
class SmallMultigraph:
    """n labeled vertices 1..n; edges[e-1] = (v, w) is the oriented edge labeled e."""

    n: int
    edges: tuple

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def excess(self) -> int:
        return self.m - self.n

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for v, w in self.edges:
            deg[v] += 1
            deg[w] += 1
        return deg[1:]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def components(self) -> list[tuple[frozenset, tuple]]:
        """Connected components as (vertex set, edge label tuple) pairs."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v, w in self.edges:
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rv] = rw
        groups: dict[int, list[int]] = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), []).append(v)
        comp_edges: dict[int, list[int]] = {r: [] for r in groups}
        for e, (v, _w) in enumerate(self.edges, start=1):
            comp_edges[find(v)].append(e)
        return [
            (frozenset(vs), tuple(comp_edges[r])) for r, vs in sorted(groups.items())
        ]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def component_excesses(self) -> list[int]:
        return [len(es) - len(vs) for vs, es in self.components()]

    def all_components_positive_excess(self) -> bool:
        return all(x >= 1 for x in self.component_excesses())

    def has_loop(self) -> bool:
        return any(v == w for v, w in self.edges)

    def has_multiple_edge(self) -> bool:
        seen = set()
        for v, w in self.edges:
            key = (v, w) if v <= w else (w, v)
            if v != w and key in seen:
                return True
            seen.add(key)
        return False

    def simple_projection(self) -> "SmallGraph":
        """Erase edge labels and orientations (only valid without loops/multiedges)."""
        pairs = tuple(sorted((v, w) if v <= w else (w, v) for v, w in self.edges))
        return SmallGraph(self.n, pairs)


@dataclass(frozen=True)
class SmallGraph:
    """Simple graph: edges are distinct sorted pairs, no loops."""

    n: int
    edges: tuple

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def excess(self) -> int:
        return self.m - self.n

    def as_multigraph(self) -> SmallMultigraph:
        return SmallMultigraph(self.n, self.edges)

    def is_connected(self) -> bool:
        return self.as_multigraph().is_connected()

    def min_degree(self) -> int:
        return self.as_multigraph().min_degree()

    def component_excesses(self) -> list[int]:
        return self.as_multigraph().component_excesses()

    def all_components_positive_excess(self) -> bool:
        return all(x >= 1 for x in self.component_excesses())


def enumerate_multigraphs(n: int, m: int, budget: int | None = None) -> Iterator[SmallMultigraph]:
    limit = MULTIGRAPH_SEQUENCE_BUDGET if budget is None else budget
    if n**(2 * m) > limit:
        raise BudgetExceeded(f"n^(2m) = {n**(2*m)} exceeds budget {limit}")
    verts = range(1, n + 1)
    for edges in itertools.product(itertools.product(verts, verts), repeat=m):
        yield SmallMultigraph(n, edges)


def enumerate_graphs(n: int, m: int, budget: int | None = None) -> Iterator[SmallGraph]:
    limit = GRAPH_VERTEX_BUDGET if budget is None else budget
    if n > limit:
        raise BudgetExceeded(f"{n} vertices exceeds the graph budget {limit}")
    pairs = [(v, w) for v in range(1, n + 1) for w in range(v + 1, n + 1)]
    for chosen in itertools.combinations(pairs, m):
        yield SmallGraph(n, tuple(chosen))


def oracle_count(
    kind: str,
    n: int,
    m: int,
    predicate: Callable | None = None,
    budget: int | None = None,
) -> int:
    """Count n-vertex m-edge objects of the given kind satisfying the predicate."""
    if kind == "graph":
        it: Iterator = enumerate_graphs(n, m, budget)
    elif kind == "multigraph":
        it = enumerate_multigraphs(n, m, budget)
    else:
        raise ValueError("kind must be 'graph' or 'multigraph'")
    if predicate is None:
        return sum(1 for _ in it)
    return sum(1 for g in it if predicate(g))


def ld_set(g: SmallMultigraph) -> tuple:
    """All loops and double edges of g, each as (vertex frozenset, edge-label frozenset).

    A loop is a single edge (v, v); a double edge is an unordered pair of
    distinct parallel non-loop edges (both relative orientations qualify).
    """
    parts = []
    for e, (v, w) in enumerate(g.edges, start=1):
        if v == w:
            parts.append((frozenset((v,)), frozenset((e,))))
    for e, f in itertools.combinations(range(1, g.m + 1), 2):
        v1, w1 = g.edges[e - 1]
        v2, w2 = g.edges[f - 1]
        if v1 == w1 or v2 == w2:
            continue
        if {v1, w1} == {v2, w2}:
            parts.append((frozenset((v1, w1)), frozenset((e, f))))
    return tuple(parts)


def kernel_of(g: SmallMultigraph) -> SmallMultigraph:
    """Kernel of a multigraph: strip degree-<=1 vertices recursively, smooth
    degree-2 vertices (two incident edges become one), drop isolated loops.

    The result has minimum degree >= 3 (possibly empty) and the excess of
    every positive-excess component is preserved.
    """
    verts = set(range(1, g.n + 1))
    edges = list(g.edges)

    def degree_map():
        deg = {v: 0 for v in verts}
        for v, w in edges:
            deg[v] += 1
            deg[w] += 1
        return deg

    changed = True
    while changed:
        changed = False
        deg = degree_map()
        low = [v for v in verts if deg[v] <= 1]
        if low:
            for v in low:
                verts.discard(v)
            edges = [e for e in edges if e[0] in verts and e[1] in verts]
            changed = True
            continue
        for v in verts:
            if deg[v] != 2:
                continue
            incident = [i for i, (a, b) in enumerate(edges) if a == v or b == v]
            if len(incident) == 1:
                # both incidences from one loop: an isolated loop, remove it
                edges.pop(incident[0])
                verts.discard(v)
            else:
                i, j = incident
                a = edges[i][0] if edges[i][1] == v else edges[i][1]
                b = edges[j][0] if edges[j][1] == v else edges[j][1]
                for idx in sorted((i, j), reverse=True):
                    edges.pop(idx)
                edges.append((a, b))
                verts.discard(v)
            changed = True
            break

    relabel = {v: i + 1 for i, v in enumerate(sorted(verts))}
    return SmallMultigraph(
        len(verts), tuple((relabel[v], relabel[w]) for v, w in edges)
    )


def _patchwork_excess(parts) -> int:
    vs: set = set()
    es: set = set()
    for pv, pe in parts:
        vs |= pv
        es |= pe
    return len(es) - len(vs)


def patchwork_count_brute(n: int, m: int, p: int, budget: int | None = None) -> int:
    """Number of patchworks with p parts whose multigraph has n vertices, m edges.

    Enumerates all multigraphs and, for each, the part sets that cover every
    vertex and every edge (so the union is exactly the multigraph).
    """
    total = 0
    all_vs = frozenset(range(1, n + 1))
    all_es = frozenset(range(1, m + 1))
    for g in enumerate_multigraphs(n, m, budget):
        parts = ld_set(g)
        if len(parts) < p:
            continue
        for chosen in itertools.combinations(parts, p):
            vs: set = set()
            es: set = set()
            for pv, pe in chosen:
                vs |= pv
                es |= pe
            if vs == all_vs and es == all_es:
                total += 1
    return total


def ie_signed_sum_brute(n: int, m: int, d: int, budget: int | None = None) -> int:
    """sum over positive-excess multigraphs G of sum over patchworks P within
    LD(G) of excess < d of (-1)^|P|: the truncated inclusion-exclusion count."""
    total = 0
    for g in enumerate_multigraphs(n, m, budget):
        if not g.all_components_positive_excess():
            continue
        parts = ld_set(g)
        for size in range(len(parts) + 1):
            for chosen in itertools.combinations(parts, size):
                if _patchwork_excess(chosen) < d:
                    total += (-1) ** size
    return total


def ie_truncated_check(n: int, m: int, d: int, budget: int | None = None) -> bool:
    """Does the exhaustive depth-d signed patchwork sum equal the depth-d
    slice extraction?  This is the identity the asymptotic truncation rests
    on; at d > excess it degenerates to full inclusion-exclusion and counts
    the loop-free multiple-edge-free multigraphs."""
    from .posexcess import ie_series_count

    return ie_signed_sum_brute(n, m, d, budget) == ie_series_count(n, m, d)
