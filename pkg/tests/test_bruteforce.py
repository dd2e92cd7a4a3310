import pytest

from graphexcess.bruteforce import (
    SmallGraph,
    SmallMultigraph,
    enumerate_graphs,
    enumerate_multigraphs,
    ie_signed_sum_brute,
    kernel_of,
    ld_set,
    oracle_count,
)
from graphexcess.counts import csg_recurrence_oracle
from graphexcess.errors import BudgetExceeded


class TestEnumeration:
    def test_complete_graph_unique(self):
        assert oracle_count("graph", 4, 6) == 1

    def test_multigraph_total_is_power(self):
        assert oracle_count("multigraph", 2, 1) == 4
        assert oracle_count("multigraph", 3, 2) == 3**4

    def test_connected_five_five(self):
        count = oracle_count("graph", 5, 5, lambda g: g.is_connected())
        assert count == 222 == csg_recurrence_oracle(5, 5)

    def test_graph_budget(self):
        with pytest.raises(BudgetExceeded):
            oracle_count("graph", 8, 3)

    def test_multigraph_budget(self):
        with pytest.raises(BudgetExceeded):
            oracle_count("multigraph", 10, 5)

    def test_budget_override(self):
        assert oracle_count("graph", 8, 1, budget=8) == 28

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            oracle_count("hypergraph", 2, 2)


class TestComponents:
    def test_classification_partitions_everything(self):
        # tree / unicycle / positive-excess components partition each multigraph
        n, m = 3, 3
        total = 0
        for g in enumerate_multigraphs(n, m):
            kinds = set()
            for vs, es in g.components():
                excess = len(es) - len(vs)
                kinds.add(-1 if excess < 0 else (0 if excess == 0 else 1))
            total += 1
            assert kinds <= {-1, 0, 1}
        assert total == n ** (2 * m)

    def test_isolated_vertices_disconnect(self):
        g = SmallMultigraph(2, ((1, 1),))
        assert not g.is_connected()
        assert g.degrees() == [2, 0]


class TestLoopsAndDoubles:
    def test_single_loop(self):
        g = SmallMultigraph(1, ((1, 1),))
        assert len(ld_set(g)) == 1

    def test_three_parallel_edges_give_three_doubles(self):
        g = SmallMultigraph(2, ((1, 2), (2, 1), (1, 2)))
        parts = ld_set(g)
        assert len(parts) == 3  # binom(3, 2) pairs, orientations irrelevant
        assert all(vs == frozenset((1, 2)) for vs, _es in parts)

    def test_simple_path_has_none(self):
        g = SmallMultigraph(3, ((1, 2), (2, 3)))
        assert ld_set(g) == ()

    def test_loops_do_not_pair(self):
        g = SmallMultigraph(1, ((1, 1), (1, 1)))
        assert len(ld_set(g)) == 2  # two loop parts, no double part


class TestKernel:
    def test_tree_vanishes(self):
        g = SmallMultigraph(4, ((1, 2), (2, 3), (2, 4)))
        ker = kernel_of(g)
        assert ker.n == 0 and ker.m == 0

    def test_unicycle_vanishes(self):
        g = SmallMultigraph(3, ((1, 2), (2, 3), (3, 1)))
        ker = kernel_of(g)
        assert ker.n == 0 and ker.m == 0

    def test_two_loops_smooth_to_min_degree_three(self):
        # one vertex with two loops has degree 4 and stays (excess 1 kernel)
        g = SmallMultigraph(1, ((1, 1), (1, 1)))
        ker = kernel_of(g)
        assert ker.n == 1 and ker.m == 2

    def test_kernel_bounds_and_degree_sweep(self):
        for n in (1, 2, 3):
            for m in range(0, 5):
                for g in enumerate_multigraphs(n, m):
                    ker = kernel_of(g)
                    if ker.n:
                        assert ker.min_degree() >= 3
                    pos = sum(x for x in g.component_excesses() if x > 0)
                    if all(x > 0 for x in g.component_excesses()):
                        # excess preserved for all-positive multigraphs
                        assert ker.excess == g.excess
                    if pos > 0:
                        assert ker.n <= 2 * pos and ker.m <= 3 * pos


class TestProjection:
    def test_fiber_size(self):
        # every clean multigraph projects to its simple graph; fibers 2^m m!
        import math

        from graphexcess.counts import total_graphs

        for n in (2, 3, 4):
            for m in range(0, 5):
                clean = [
                    g
                    for g in enumerate_multigraphs(n, m)
                    if not g.has_loop() and not g.has_multiple_edge()
                ]
                fibers = {}
                for g in clean:
                    fibers.setdefault(g.simple_projection(), 0)
                    fibers[g.simple_projection()] += 1
                assert len(fibers) == total_graphs(n, m)
                assert all(v == 2**m * math.factorial(m) for v in fibers.values())


class TestSignedPatchworkSums:
    def test_small_anchor(self):
        assert ie_signed_sum_brute(1, 2, 1) == -1
        assert ie_signed_sum_brute(1, 2, 2) == 0
