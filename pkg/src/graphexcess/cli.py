"""Command-line interface.

Subcommands mirror the library modules: count / table / validate / asympt /
wright / patchwork / sqdk.  Exact counts are always printed as full decimal
strings.  Exit codes: 0 success, 1 validation failure, 2 invalid arguments,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath as mp

from . import asympt, bruteforce, counts, patchworks, posexcess, series, wright
from .errors import BudgetExceeded, GraphExcessError


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _pick_route(family: str, n: int, k: int, route: str) -> str:
    if route != "auto":
        return route
    if family == "csg" and k > 12 and n > 40:
        return "recurrence"
    return "excess-gf"


def _record(family: str, n: int, k: int, route: str, budget: int | None = None):
    fn = counts.csg_exact if family == "csg" else counts.cmg_exact
    return fn(n, k, route=_pick_route(family, n, k, route), budget=budget)


def _cmd_count(args) -> int:
    if args.family in ("csg", "cmg"):
        rec = _record(args.family, args.n, args.k, args.route, args.budget)
        payload = {
            "family": rec.family,
            "n": rec.n,
            "k": rec.k,
            "m": rec.n + rec.k,
            "count": str(rec.count),
            "route": rec.route,
        }
    else:
        fn = posexcess.sgpos_count if args.family == "sgpos" else posexcess.mgpos_count
        cnt = fn(args.n, args.k)
        payload = {
            "family": args.family,
            "n": args.n,
            "k": args.k,
            "m": args.n + args.k,
            "count": str(cnt),
            "route": "excess-gf",
        }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(payload["count"])
    return 0


def _cmd_table(args) -> int:
    cache_dir = counts.cache_dir_from_env(args.cache_dir)
    table = None
    if args.route == "recurrence":
        # one table build (disk-cached when a directory is configured)
        n_max = max(args.n)
        m_max = max(max(n + k for n in args.n for k in args.k), 0)
        table = counts.recurrence_table(
            args.family, n_max, m_max, cache_directory=cache_dir
        )
    rows = []
    for n in args.n:
        for k in args.k:
            if n + k < 0:
                continue
            if table is not None:
                rec = counts.CountRecord(args.family, n, k, table[n][n + k], "recurrence")
            else:
                rec = _record(args.family, n, k, args.route)
            rows.append(rec)
    lines = []
    if args.format == "csv":
        lines.append("family,n,k,m,count,route")
        for r in rows:
            lines.append(f"{r.family},{r.n},{r.k},{r.n + r.k},{r.count},{r.route}")
    elif args.format == "json":
        lines.append(
            json.dumps(
                [
                    {
                        "family": r.family,
                        "n": r.n,
                        "k": r.k,
                        "m": r.n + r.k,
                        "count": str(r.count),
                        "route": r.route,
                    }
                    for r in rows
                ]
            )
        )
    else:
        for r in rows:
            lines.append(f"{r.family} n={r.n} k={r.k}: {r.count}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _check(name: str, ok: bool, detail: str = "") -> tuple[str, bool]:
    return (f"[{'ok' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""), ok)


def _validate_quick() -> list[tuple[str, bool]]:
    from fractions import Fraction as F

    out = []
    p1 = patchworks.patchwork_excess_poly(1)
    p2 = patchworks.patchwork_excess_poly(2)
    p3 = patchworks.patchwork_excess_poly(3)
    out.append(
        _check(
            "patchwork polynomials: printed low-degree tables",
            p1.coefficient(1, 2) == F(1, 8)
            and p1.coefficient(2, 3) == F(1, 12)
            and p2.coefficient(1, 3) == F(1, 48)
            and p2.coefficient(2, 4) == F(155, 384)
            and p3.coefficient(1, 4) == F(1, 384)
            and p3.coefficient(2, 5) == F(2461, 1920),
            "excess 1..3 against the classical display",
        )
    )
    out.append(
        _check(
            "projection factor 2^m m! on 3 vertices, 2 edges (fiber 8)",
            counts.projection_factor_check(3, 2) and counts.projection_factor_check(2, 1),
        )
    )
    t_newton = series.tree_series_newton(12)
    t_closed = series.tree_series(12)
    u, v, mv = series.unicycle_series(12)
    cayley = all(
        u.coeff(n) * series.math.factorial(n) == (n ** (n - 2) if n > 1 else 1)
        for n in range(1, 13)
    )
    out.append(
        _check(
            "tree series: functional equation vs closed form + Cayley",
            t_newton == t_closed and cayley,
        )
    )
    out.append(
        _check(
            "multi-unicycle identity exp(2 MV)(1 - T) = 1",
            ((mv * 2).exp() * (series.ExactSeries.one(12) - t_closed))
            == series.ExactSeries.one(12),
        )
    )
    sp = asympt.solve_saddle(F(1, 1))
    res = asympt.saddle_identity_residuals(sp)
    out.append(
        _check(
            "saddle identities at ratio 1",
            all(r < mp.mpf(10) ** -30 for r in res.values()),
            "five closed forms to 1e-30",
        )
    )
    out.append(
        _check(
            "capped double-factorial sums: S_{1,0,k} = 1, row bound 3q",
            asympt.sqdk(1, 0, 12) == 1
            and all(
                s <= 3 * q for q, s in enumerate(asympt.sqdk_row(20, 0), start=1)
            ),
        )
    )
    small = all(
        counts.csg_exact(n, k).count == counts.csg_recurrence_oracle(n, n + k)
        for n in range(1, 9)
        for k in range(-1, 3)
        if n + k <= n * (n - 1) // 2 and n + k >= 0
    )
    out.append(_check("connected graphs: composition route = recurrence (n <= 8)", small))
    return out


def _validate_full() -> list[tuple[str, bool]]:
    out = _validate_quick()
    ok = True
    for n in range(1, 17):
        for k in range(-1, 7):
            m = n + k
            if m < 0 or m > n * (n - 1) // 2:
                continue
            if counts.csg_exact(n, k).count != counts.csg_recurrence_oracle(n, m):
                ok = False
    out.append(_check("triple-route sweep, graphs (n <= 16, k <= 6)", ok))
    ok = True
    for n in range(1, 13):
        for k in range(-1, 7):
            if n + k < 0:
                continue
            if counts.cmg_exact(n, k).count != counts.cmg_recurrence_oracle(n, n + k):
                ok = False
    out.append(_check("triple-route sweep, multigraphs (n <= 12, k <= 6)", ok))
    t = series.tree_series(25)
    ok = True
    for k in range(1, 5):
        a = wright.sgpos_tform(k).evaluate(t)
        b = posexcess.sgpos_series(k, 25)
        c = wright.mgpos_tform(k).evaluate(t)
        d = posexcess.mgpos_series(k, 25)
        ok = ok and a == b and c == d
    out.append(_check("kernel-form route = extraction route (k <= 4, n <= 25)", ok))
    ok = True
    for k in range(1, 4):
        mg = posexcess.mgpos_series(k, 20)
        sg = posexcess.sgpos_series(k, 20)
        ok = ok and all(sg.coeff(n) <= mg.coeff(n) for n in range(21))
    out.append(_check("coefficient domination: simple <= multigraph slices", ok))
    ok = all(
        bruteforce.ie_signed_sum_brute(n, m, d) == posexcess.ie_series_count(n, m, d)
        for n in (1, 2)
        for m in range(0, 5)
        for d in (1, 2, 3)
    )
    out.append(_check("truncated inclusion-exclusion identity (n <= 2, m <= 4)", ok))
    ok = True
    for n in (1, 2, 3):
        for m in range(0, 5):
            for g in bruteforce.enumerate_multigraphs(n, m):
                ker = bruteforce.kernel_of(g)
                if ker.m and ker.min_degree() < 3:
                    ok = False
    out.append(_check("kernels have min degree >= 3 (exhaustive small sweep)", ok))
    return out


def _cmd_validate(args) -> int:
    checks = _validate_quick() if args.suite == "quick" else _validate_full()
    failed = 0
    for line, okflag in checks:
        print(line)
        if not okflag:
            failed += 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def _cmd_asympt(args) -> int:
    from fractions import Fraction as F

    prec = args.precision
    sp = asympt.solve_saddle(F(args.k, args.n), prec)
    fn = asympt.csg_dominant_log if args.family == "csg" else asympt.cmg_dominant_log
    log_dom = fn(args.n, args.k, prec)
    payload = {
        "family": args.family,
        "n": args.n,
        "k": args.k,
        "precision": prec,
        "lambda": mp.nstr(sp.lam, 40),
        "residual": mp.nstr(sp.residual, 5),
        "log_dominant": mp.nstr(log_dom, 30),
    }
    exact = None
    if args.exact:
        rec = _record(args.family, args.n, args.k, "auto")
        exact = rec.count
        log_exact = asympt.log_of_integer(exact, prec)
        payload["log_exact"] = mp.nstr(log_exact, 30)
        payload["ratio"] = mp.nstr(mp.exp(log_exact - log_dom), 20)
    if args.d is not None and args.family == "cmg":
        rep = asympt.truncation_report(args.n, args.k, args.d, prec, exact_count=exact)
        payload["truncation"] = {
            f"q={q},r={r}": mp.nstr(mp.mpf(rel), 6)
            for (q, r), rel in sorted(rep.relative.items())
        }
        payload["log_truncated"] = mp.nstr(rep.truncated_log, 30)
    if args.grid:
        grid = [int(x) for x in args.grid.split(",")]
        ratio = F(args.k, args.n)
        cs = []
        for n in grid:
            rec = _record(args.family, n, int(ratio * n), "auto")
            cs.append(rec.count)
        est, pairs, _res = asympt.estimate_c1(args.family, ratio, grid, cs, prec)
        payload["c1_estimate"] = mp.nstr(est, 10)
        payload["c1_pairs"] = [mp.nstr(p, 10) for p in pairs]
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_wright(args) -> int:
    if args.kmax:
        tables = wright.wright_polys(args.kmax)
        for k in range(1, args.kmax + 1):
            print(wright.wright_poly_json(args.family, k, tables))
    else:
        print(wright.wright_poly_json(args.family, args.k))
    return 0


def _cmd_patchwork(args) -> int:
    print(patchworks.patchwork_poly_to_json(patchworks.patchwork_excess_poly(args.k)))
    return 0


def _cmd_sqdk(args) -> int:
    if args.row:
        row = asympt.sqdk_row(args.k, args.d)
        print(json.dumps({"k": args.k, "d": args.d, "S": [str(s) for s in row]}))
    else:
        print(str(asympt.sqdk(args.q, args.d, args.k)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphexcess",
        description="Exact and asymptotic enumeration of connected labeled "
        "graphs and multigraphs by excess (= edges - vertices).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="one exact count")
    c.add_argument("--family", choices=("csg", "cmg", "sgpos", "mgpos"), required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument(
        "--route",
        choices=("auto", "excess-gf", "recurrence", "brute-force"),
        default="auto",
    )
    c.add_argument("--format", choices=("plain", "json"), default="plain")
    c.add_argument(
        "--budget",
        type=int,
        default=None,
        help="override the brute-force enumeration budget",
    )
    c.set_defaults(func=_cmd_count)

    t = sub.add_parser("table", help="table of counts over n/k ranges")
    t.add_argument("--family", choices=("csg", "cmg"), required=True)
    t.add_argument("--n", type=_parse_range, required=True, metavar="A:B")
    t.add_argument("--k", type=_parse_range, required=True, metavar="A:B")
    t.add_argument(
        "--route",
        choices=("auto", "excess-gf", "recurrence", "brute-force"),
        default="auto",
    )
    t.add_argument("--format", choices=("csv", "json", "plain"), default="csv")
    t.add_argument("--out", default=None)
    t.add_argument(
        "--cache-dir",
        default=None,
        help=f"recurrence-table cache directory (or ${counts.CACHE_ENV_VAR})",
    )
    t.set_defaults(func=_cmd_table)

    v = sub.add_parser("validate", help="cross-route and identity check suites")
    v.add_argument("--suite", choices=("quick", "full"), default="quick")
    v.set_defaults(func=_cmd_validate)

    a = sub.add_parser("asympt", help="saddle-point asymptotics report (JSON)")
    a.add_argument("--family", choices=("csg", "cmg"), required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--d", type=int, default=None, help="truncation depth (cmg only)")
    a.add_argument("--precision", type=int, default=256)
    a.add_argument("--exact", action="store_true", help="also compute the exact count")
    a.add_argument("--grid", default=None, help="comma-separated n grid for c1")
    a.set_defaults(func=_cmd_asympt)

    w = sub.add_parser("wright", help="polynomial tables over (1-T)^{3k} as JSON")
    w.add_argument("--family", choices=("mg", "sg", "cmg", "csg"), required=True)
    w.add_argument("--k", type=int, default=None)
    w.add_argument("--kmax", type=int, default=None)
    w.set_defaults(func=_cmd_wright)

    pw = sub.add_parser("patchwork", help="patchwork polynomial P_k^{>0} as JSON")
    pw.add_argument("--k", type=int, required=True)
    pw.set_defaults(func=_cmd_patchwork)

    s = sub.add_parser("sqdk", help="capped double-factorial composition sums")
    s.add_argument("--q", type=int, default=1)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--row", action="store_true", help="emit S_{q,d,k} for q = 1..k")
    s.set_defaults(func=_cmd_sqdk)
    return p


def main(argv=None) -> int:
    sys.set_int_max_str_digits(50_000_000)
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) is None and args.command == "wright" and not args.kmax:
        parser.error("wright needs --k or --kmax")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (GraphExcessError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
