import math
from fractions import Fraction as F

import pytest

from graphexcess.bruteforce import patchwork_count_brute
from graphexcess.patchworks import (
    PatchworkPoly,
    patchwork_eval,
    patchwork_eval_at_series,
    patchwork_excess_poly,
    patchwork_gf,
    patchwork_poly_to_json,
)
from graphexcess.series import ExactSeries, tree_series
from graphexcess.trational import TRational, XSeries


# The classical displayed tables for excess 1..3 (their full z-support is
# z <= k+2; the complete polynomials continue to z^{3k}, tested separately).
PRINTED = {
    1: {
        (1, 2): F(1, 8),
        (2, 3): F(1, 12),
        (2, 2): F(1, 2),
        (3, 2): F(1, 8),
    },
    2: {
        (1, 3): F(1, 48),
        (2, 2): F(1, 16),
        (2, 3): F(17, 24),
        (2, 4): F(155, 384),
        (2, 5): F(1, 8),
        (2, 6): F(1, 48),
        (3, 3): F(7, 16),
        (3, 4): F(7, 48),
        (3, 5): F(1, 96),
        (4, 3): F(1, 12),
        (4, 4): F(9, 64),
        (4, 5): F(1, 24),
        (4, 6): F(1, 288),
    },
    3: {
        (1, 4): F(1, 384),
        (2, 3): F(3, 16),
        (2, 4): F(17, 16),
        (2, 5): F(2461, 1920),
        (2, 6): F(47, 48),
        (2, 7): F(25, 48),
        (2, 8): F(3, 16),
        (2, 9): F(1, 24),
        (2, 10): F(1, 240),
        (3, 3): F(1, 12),
        (3, 4): F(377, 384),
        (3, 5): F(119, 192),
        (3, 6): F(195, 1024),
        (3, 7): F(7, 192),
        (3, 8): F(1, 384),
        (4, 4): F(43, 96),
        (4, 5): F(1, 2),
        (4, 6): F(625, 2304),
        (4, 7): F(443, 4608),
        (4, 8): F(1, 48),
        (4, 9): F(1, 576),
        (5, 4): F(7, 96),
        (5, 5): F(61, 192),
        (5, 6): F(443, 3072),
        (5, 7): F(1, 36),
        (5, 8): F(7, 2304),
    },
}


class TestGoldenPolynomials:
    def test_excess_zero_is_one(self):
        assert patchwork_excess_poly(0).rows == ((1,),)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_printed_tables(self, k):
        poly = patchwork_excess_poly(k)
        for (n, j), value in PRINTED[k].items():
            assert poly.coefficient(n, j) == value, (k, n, j)
        # and no other nonzero entries on the printed support z <= k+2
        for n in range(1, k + 3):
            for j, c in enumerate(poly.rows[n] if n < len(poly.rows) else ()):
                if c != 0:
                    assert (n, j) in PRINTED[k], (k, n, j, c)

    def test_excess_one_support_stops_at_three(self):
        # a single glued component of excess 1 has at most 3 vertices
        assert patchwork_excess_poly(1).z_degree == 3

    def test_multicomponent_extension_rows(self):
        # two glued excess-1 components: ((1/8) u^2 z^3)^2 / 2! = u^4 z^6 / 128
        p2 = patchwork_excess_poly(2)
        assert p2.z_degree == 6
        assert p2.coefficient(6, 4) == F(1, 128)
        assert p2.coefficient(5, 4) == F(1, 16)
        assert p2.coefficient(5, 5) == F(1, 96)

    def test_component_exponential_structure(self):
        # subtracting products of lower-excess glued components must leave
        # single-component polynomials, supported on z <= k+2
        polys = {k: patchwork_excess_poly(k) for k in (1, 2, 3)}

        def as_dicts(p, nz):
            rows = [
                {j: c for j, c in enumerate(r) if c != 0} for r in p.rows
            ]
            return rows + [dict()] * (nz + 1 - len(rows))

        nz = 9
        P1, P2, P3 = (as_dicts(polys[k], nz) for k in (1, 2, 3))

        def mul(A, B):
            out = [dict() for _ in range(nz + 1)]
            for a, da in enumerate(A):
                for b in range(nz + 1 - a):
                    for i, ci in da.items():
                        for j, cj in B[b].items():
                            out[a + b][i + j] = out[a + b].get(i + j, 0) + ci * cj
            return out

        def sub(A, B, scale=1):
            out = []
            for ra, rb in zip(A, B):
                row = {}
                for j in set(ra) | set(rb):
                    v = ra.get(j, 0) - scale * rb.get(j, 0)
                    if v != 0:
                        row[j] = v
                out.append(row)
            return out

        C1 = P1
        C2 = sub(P2, mul(C1, C1), F(1, 2))
        assert max((n for n, r in enumerate(C2) if r), default=0) <= 4
        C3 = sub(sub(P3, mul(C1, C2)), mul(mul(C1, C1), C1), F(1, 6))
        assert max((n for n, r in enumerate(C3) if r), default=0) <= 5

    def test_top_coefficient_nonzero(self):
        for k in (1, 2, 3):
            poly = patchwork_excess_poly(k)
            assert any(c != 0 for c in poly.rows[poly.z_degree])


class TestTrivariateTable:
    def test_u_zero_collapses_to_one(self):
        table = patchwork_gf(4, 5)
        # only the empty patchwork survives once e^{-z} removes isolated vertices
        assert table.coefficient(0, 0, 0) == 1
        for n in range(5):
            for m in range(6):
                for p in range(4):
                    if (n, m, p) != (0, 0, 0):
                        if p == 0:
                            assert table.coefficient(n, m, 0) == 0, (n, m)

    def test_excess_zero_diagonal_is_isolated_parts_exponential(self):
        # [z^n w^n] P must match e^{u z/2 + u z^2/4} at the slice level
        table = patchwork_gf(6, 6)
        for n in range(7):
            expected = {}
            for a in range(n + 1):
                if (n - a) % 2 == 0:
                    b = (n - a) // 2
                    expected[a + b] = expected.get(a + b, F(0)) + (
                        F(1, 2) ** a / math.factorial(a) * F(1, 4) ** b / math.factorial(b)
                    )
            row = table.u_poly(n, n)
            got = {j: c for j, c in enumerate(row) if c != 0}
            assert got == {j: v for j, v in expected.items() if v != 0}, n

    def test_multiplicativity_on_excess_one_diagonal(self):
        table = patchwork_gf(6, 7)
        p0_rows = [table.u_poly(n, n) for n in range(7)]
        p1 = patchwork_excess_poly(1)
        for n in range(7):
            # [z^n w^{n+1}] P = sum_a p0[z^a] * P_1^{>0}[z^{n-a}]
            expected = {}
            for a in range(n + 1):
                for i, ci in enumerate(p0_rows[a]):
                    if ci == 0:
                        continue
                    row = p1.rows[n - a] if n - a < len(p1.rows) else ()
                    for j, cj in enumerate(row):
                        if cj != 0:
                            expected[i + j] = expected.get(i + j, F(0)) + ci * cj
            got = {j: c for j, c in enumerate(table.u_poly(n, n + 1)) if c != 0}
            assert got == {j: v for j, v in expected.items() if v != 0}, n

    def test_nonnegative_coefficients(self):
        table = patchwork_gf(4, 5)
        for n in range(5):
            for m in range(6):
                for c in table.u_poly(n, m):
                    assert c >= 0

    @pytest.mark.parametrize(
        "n,m",
        [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (2, 4)],
    )
    def test_counts_match_brute_force(self, n, m):
        table = patchwork_gf(n, m)
        poly = table.u_poly(n, m)
        for p in range(len(poly) + 2):
            assert table.count(n, m, p) == patchwork_count_brute(n, m, p), (n, m, p)


class TestEvaluation:
    def test_p0_evaluates_to_one(self):
        xs = patchwork_eval(patchwork_excess_poly(0), -1, 4)
        assert xs == XSeries.one(4)

    def test_substitution_at_x_zero(self):
        p1 = patchwork_excess_poly(1)
        xs = patchwork_eval(p1, -1, 4)
        # coefficient of x^0 is P_1^{>0}(t, -1) = t/8 + (5/12) t^2 + t^3/8
        assert xs.coeff(0) == TRational([0, F(1, 8), F(5, 12), F(1, 8)])

    def test_series_and_trational_substitutions_agree(self):
        t = tree_series(10)
        t_pows = [ExactSeries.one(10)]
        for _ in range(9):
            t_pows.append(t_pows[-1] * t)
        for k in (1, 2):
            poly = patchwork_excess_poly(k)
            xs = patchwork_eval(poly, -1, 4)
            series_rows = patchwork_eval_at_series(poly, -1, t_pows, 4)
            for i in range(5):
                assert xs.coeff(i).evaluate(t) == series_rows[i], (k, i)

    def test_plus_two_substitution(self):
        # the u = +2 variant used in tail bounds stays nonnegative
        p2 = patchwork_excess_poly(2)
        vals = p2.substitute_u(2)
        assert all(v >= 0 for v in vals)

    def test_json_round_trip_layout(self):
        import json

        payload = json.loads(patchwork_poly_to_json(patchwork_excess_poly(1)))
        assert payload["k"] == 1
        rows = {r["z"]: dict((str(j), c) for j, c in r["u_coeffs"]) for r in payload["rows"]}
        assert rows[1]["2"] == "1/8"
        assert rows[2]["3"] == "1/12"
