import math
import random
from fractions import Fraction as F

import mpmath as mp
import pytest

from graphexcess.asympt import (
    cmg_dominant_log,
    cmg_dominant_log_factorial,
    csg_dominant_log,
    dominant_theta_log,
    estimate_c1,
    estimate_c1_from_residuals,
    fixed_excess_asympt,
    log_of_integer,
    saddle_identity_residuals,
    solve_saddle,
    sqdk,
    sqdk_row,
    truncation_report,
    truncation_decay_ratios,
)
from graphexcess.counts import cmg_exact, csg_exact, csg_recurrence_oracle
from graphexcess.errors import InsufficientGrid, NonPositiveRatio


class TestSaddle:
    def test_ratio_one_bracket(self):
        sp = solve_saddle(F(1))
        assert 3.5 < sp.lam < 4.0

    def test_nonpositive_ratio(self):
        with pytest.raises(NonPositiveRatio):
            solve_saddle(0)
        with pytest.raises(NonPositiveRatio):
            solve_saddle(F(-1, 2))

    def test_residual_scales_with_precision(self):
        for prec in (128, 256, 512):
            sp = solve_saddle(F(3, 7), prec)
            assert sp.residual < mp.mpf(2) ** (-prec // 2)

    def test_identities_random_ratios(self):
        rng = random.Random(20240817)
        for _ in range(20):
            r = F(rng.randint(1, 1000), rng.randint(1, 1000))
            r = max(min(r, F(10)), F(1, 10))
            sp = solve_saddle(r, 256)
            for name, res in saddle_identity_residuals(sp).items():
                assert res < mp.mpf(10) ** -30, (r, name)

    def test_positivity_guards(self):
        for r in (F(1, 4), F(1, 2), F(1), F(2), F(4)):
            sp = solve_saddle(r)
            assert sp.lam / 2 - sp.ratio > 0
            assert sp.lam**2 / 4 / sp.ratio - sp.ratio - 1 > 0
            assert sp.det_h > 0
            assert 0 < sp.tau < 1

    def test_lambda_digits_stable_across_precision(self):
        a = solve_saddle(F(1), 128)
        b = solve_saddle(F(1), 256)
        assert mp.nstr(a.lam, 30) == mp.nstr(b.lam, 30)

    def test_small_ratio_lambda_small(self):
        sp = solve_saddle(F(1, 1000))
        assert sp.lam < 0.2


class TestDominantTerms:
    def test_csg_ratio_tends_to_one(self):
        rel = []
        for n in (20, 40):
            exact = csg_recurrence_oracle(n, 2 * n)
            r = mp.exp(log_of_integer(exact) - csg_dominant_log(n, n)) - 1
            rel.append(abs(r))
        assert rel[1] < rel[0]

    def test_cmg_ratio_tends_to_one(self):
        rel = []
        for n in (10, 20, 40):
            exact = cmg_exact(n, n).count
            r = mp.exp(log_of_integer(exact) - cmg_dominant_log(n, n)) - 1
            rel.append(abs(r))
        assert rel[2] < rel[1] < rel[0]

    def test_factorial_and_simplified_forms_converge(self):
        a200 = abs(mp.exp(cmg_dominant_log(200, 200) - cmg_dominant_log_factorial(200, 200)) - 1)
        a400 = abs(mp.exp(cmg_dominant_log(400, 400) - cmg_dominant_log_factorial(400, 400)) - 1)
        assert a200 < 1e-3
        assert a400 < a200

    def test_theta_reference_converges_to_constant(self):
        # D_{n,k} / theta-form tends to a positive constant at fixed ratio
        vals = [
            mp.exp(csg_dominant_log(n, n) - dominant_theta_log(n, n))
            for n in (20, 40, 80)
        ]
        assert all(v > 0 for v in vals)
        assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0])


class TestFixedExcess:
    def test_gamma_half_integer_reduction(self):
        # k = 1: Gamma(3/2) = sqrt(pi)/2, so the formula reduces to
        # 2 K*_1(1) n^n (n/2)
        la = fixed_excess_asympt(100, 1, "csg")
        with mp.workprec(320):
            expected = mp.log(2 * mp.mpf(5) / 24) + 100 * mp.log(100) + mp.log(50)
            assert abs(la - expected) < mp.mpf(10) ** -25

    def test_error_shrinks_like_inverse_sqrt(self):
        es = {}
        for n in (100, 400):
            exact = csg_exact(n, 1).count
            es[n] = abs(mp.exp(log_of_integer(exact) - fixed_excess_asympt(n, 1, "csg")) - 1)
        assert 0.3 < es[400] / es[100] < 0.7

    def test_multigraph_variant(self):
        es = {}
        for n in (100, 400):
            exact = cmg_exact(n, 1).count
            es[n] = abs(mp.exp(log_of_integer(exact) - fixed_excess_asympt(n, 1, "cmg")) - 1)
        assert 0.3 < es[400] / es[100] < 0.7


class TestTruncation:
    def test_signs_alternate_with_q(self):
        rep = truncation_report(24, 24, 2)
        for (q, _r), v in rep.terms.items():
            assert v > 0  # the (-1)^{q+1} prefactor is applied at summation

    def test_leading_term_dominates(self):
        rep = truncation_report(24, 24, 2)
        assert rep.relative[(1, 0)] == 1.0
        for key, relv in rep.relative.items():
            if key != (1, 0):
                assert relv < 0.1, key

    def test_truncated_beats_shallower(self):
        n = k = 60
        exact = cmg_exact(n, k).count
        errs = {}
        for d in (0, 2):
            rep = truncation_report(n, k, d, exact_count=exact)
            approx = rep.truncated_sum() * 2 ** (n + k) * math.factorial(n + k)
            errs[d] = abs(F(int(approx.numerator), int(approx.denominator)) / exact - 1)
        assert errs[2] < errs[0]

    def test_leading_summand_alone_converges(self):
        # the (q, r) = (1, 0) term over the exact count tends to 1
        vals = []
        for n in (16, 32):
            exact = cmg_exact(n, n).count
            rep = truncation_report(n, n, 0, exact_count=exact)
            lead = rep.terms[(1, 0)] * 2 ** (2 * n) * math.factorial(2 * n)
            vals.append(abs(F(int(lead.numerator), int(lead.denominator)) / exact - 1))
        assert vals[1] < vals[0]

    def test_decay_with_doubling(self):
        ratios = truncation_decay_ratios(12, 12, 1)
        for (q, r), ratio in ratios.items():
            if r >= 1:
                assert ratio < 1, (q, r)


class TestC1Estimation:
    def test_exact_model_recovery(self):
        est, _pairs = estimate_c1_from_residuals([10, 20, 40], [F(3, 10), F(3, 20), F(3, 40)])
        assert est == 3

    def test_with_second_order_term(self):
        rs = [F(3, n) + F(5, n * n) for n in (16, 32, 64)]
        est, _pairs = estimate_c1_from_residuals([16, 32, 64], rs)
        assert abs(est - 3) < F(1, 10)

    def test_insufficient_grid(self):
        with pytest.raises(InsufficientGrid):
            estimate_c1_from_residuals([10, 20], [F(1, 10), F(1, 20)])

    def test_on_exact_counts(self):
        grid = [10, 20, 40]
        cs = [cmg_exact(n, n).count for n in grid]
        est, pairs, _res = estimate_c1("cmg", 1, grid, cs)
        assert len(pairs) == 2
        # successive pair estimates approach each other
        assert abs(pairs[1] - pairs[0]) < abs(float(pairs[0])) + 1

    def test_graph_family_grid_stabilizes(self):
        # ratio 1 over n in {30, 60, 120}: pair estimates of c1 settle down
        grid = [30, 60, 120]
        cs = [csg_exact(n, n, route="recurrence").count for n in grid]
        est, pairs, _res = estimate_c1("csg", 1, grid, cs)
        assert abs(pairs[1] - pairs[0]) < abs(pairs[0])
        assert abs(est - pairs[0]) < abs(pairs[0])


class TestSqdk:
    def test_single_part(self):
        for k in (1, 5, 20):
            assert sqdk(1, 0, k) == 1

    def test_row_bound(self):
        for k in (20, 30):
            row = sqdk_row(k, 0)
            for q, s in enumerate(row, start=1):
                assert s <= 3 * q, (k, q)

    def test_monotone_in_d(self):
        for d in range(0, 6):
            assert sqdk(3, d + 1, 12) <= sqdk(3, d, 12)

    def test_capped_tail_is_tiny(self):
        for k in (40, 60):
            for d in (0, 1, 2):
                for q in (k // 2, k):
                    assert sqdk(q, k - d, k) <= F(1, 2**k), (k, d, q)

    def test_weighted_tail_sum_decreases_with_k(self):
        def tail(k, d):
            return sum(F(1, q) * sqdk(q, q - 1, k) for q in range(d + 5, k + 1))

        assert tail(24, 1) < tail(16, 1) < tail(10, 1)
