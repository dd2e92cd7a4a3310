import math

import pytest

from graphexcess.bruteforce import ie_signed_sum_brute, ie_truncated_check, oracle_count
from graphexcess.posexcess import (
    core_coeff,
    core_series,
    ie_series_count,
    mcore_coeff,
    mcore_series,
    mgpos_count,
    mgpos_series,
    sgpos_count,
    sgpos_series,
)
from graphexcess.series import ExactSeries, tree_series, unicycle_series


def min_degree_two(g):
    return g.min_degree() >= 2


def positive_components(g):
    return g.all_components_positive_excess()


class TestMulticores:
    def test_single_vertex_single_loop(self):
        assert mcore_coeff(1, 1) == 1

    def test_empty(self):
        assert mcore_coeff(0, 0) == 1

    @pytest.mark.parametrize(
        "n,m",
        [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (2, 4), (4, 4), (3, 5)],
    )
    def test_against_enumeration(self, n, m):
        assert mcore_coeff(n, m) == oracle_count("multigraph", n, m, min_degree_two)

    def test_series_slice_matches_table(self):
        s = mcore_series(1, 5)
        for n in range(6):
            m = n + 1
            c = s.coeff(n) * math.factorial(n) * 2**m * math.factorial(m)
            assert c == mcore_coeff(n, m)


class TestCores:
    def test_triangle(self):
        assert core_coeff(3, 3) == 1

    def test_four_cycles(self):
        assert core_coeff(4, 4) == 3

    def test_complete_graph(self):
        assert core_coeff(4, 6) == 1

    @pytest.mark.parametrize("n", range(1, 7))
    def test_against_enumeration(self, n):
        for m in range(0, n * (n - 1) // 2 + 1):
            assert core_coeff(n, m) == oracle_count("graph", n, m, min_degree_two), (n, m)


class TestPositiveExcessMultigraphs:
    def test_excess_zero_is_one(self):
        assert mgpos_series(0, 10) == ExactSeries.one(10)

    def test_one_vertex_two_loops(self):
        assert mgpos_count(1, 1) == 1

    @pytest.mark.parametrize("route", ["extraction", "tform", "mcore"])
    def test_route(self, route):
        base = mgpos_series(3, 14, "extraction")
        assert mgpos_series(3, 14, route) == base

    def test_routes_agree_sweep(self):
        for k in range(5):
            a = mgpos_series(k, 12, "extraction")
            assert a == mgpos_series(k, 12, "tform")
            assert a == mgpos_series(k, 12, "mcore")

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_excess_two_enumeration(self, n):
        assert mgpos_count(n, 2) == oracle_count(
            "multigraph", n, n + 2, positive_components
        )

    def test_decomposition_with_multi_unicycles(self):
        # MG_k^{>0} e^{MV} = MCore_k(T)
        order = 12
        t = tree_series(order)
        _u, _v, mv = unicycle_series(order)
        for k in (1, 2, 3):
            lhs = mgpos_series(k, order) * mv.exp()
            mc = mcore_series(k, order)
            rhs = ExactSeries.zero(order)
            tp = ExactSeries.one(order)
            for n in range(order + 1):
                rhs = rhs + tp * mc.coeff(n)
                tp = tp * t
            assert lhs == rhs, k


class TestPositiveExcessGraphs:
    def test_excess_one_on_four_vertices(self):
        assert sgpos_count(4, 1) == 6

    def test_k4(self):
        assert sgpos_count(4, 2) == 1

    def test_excess_three_on_five_vertices(self):
        # all binom(10,8) = 45 graphs are connected with excess 3
        assert sgpos_count(5, 3) == 45

    def test_routes_agree(self):
        for k in range(5):
            assert sgpos_series(k, 12, "extraction") == sgpos_series(k, 12, "core")

    @pytest.mark.parametrize("n", range(1, 7))
    def test_against_enumeration(self, n):
        for k in (1, 2, 3):
            m = n + k
            if m > n * (n - 1) // 2:
                continue
            assert sgpos_count(n, k) == oracle_count("graph", n, m, positive_components)

    def test_decomposition_with_unicycles(self):
        # SG_k^{>0} e^{V} = Core_k(T)
        order = 10
        t = tree_series(order)
        _u, v, _mv = unicycle_series(order)
        for k in (1, 2):
            lhs = sgpos_series(k, order) * v.exp()
            cs = core_series(k, order)
            rhs = ExactSeries.zero(order)
            tp = ExactSeries.one(order)
            for n in range(order + 1):
                rhs = rhs + tp * cs.coeff(n)
                tp = tp * t
            assert lhs == rhs, k


class TestDomination:
    def test_simple_below_multigraph_slices(self):
        for k in range(1, 5):
            mg = mgpos_series(k, 20)
            sg = sgpos_series(k, 20)
            for n in range(21):
                assert sg.coeff(n) <= mg.coeff(n), (k, n)


class TestTruncatedInclusionExclusion:
    def test_hand_case(self):
        # one vertex, two loops, d=1: empty patchwork counts +1, the two
        # single-loop patchworks count -1 each
        assert ie_series_count(1, 2, 1) == -1

    @pytest.mark.parametrize("n", [1, 2])
    def test_against_brute(self, n):
        for m in range(0, 5):
            for d in (1, 2, 3):
                assert ie_truncated_check(n, m, d), (n, m, d)

    def test_full_depth_reduces_to_simple_counts(self):
        for n in (1, 2, 3):
            for m in range(n, 6):
                k = m - n
                full = ie_series_count(n, m, k + 1)
                expected = 2**m * math.factorial(m) * sgpos_count(n, k)
                assert full == expected, (n, m)
