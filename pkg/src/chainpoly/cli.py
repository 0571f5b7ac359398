"""Command-line entry point.

Exit status: 0 when every asserted check passes, 1 when a check fails,
2 on usage errors, unreadable poset files and budget overruns.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .analysis import (
    ALL_METHODS,
    Budget,
    BudgetExceededError,
    cross_verify,
    run_selftest,
    verify_gasharov,
    verify_kirillov,
)
from .formats import dumps, load_poset
from .poset import (
    NotGradedError,
    PosetError,
    all_chains,
    linear_extensions,
    maximal_chains,
    natural_labeling,
    rank_function,
)
from .ehrhart import IntPolynomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"invalid range {text!r}; use N or A..B") from None
    if a < 1 or b < a:
        raise UsageError(f"invalid range {text!r}; need 1 <= A <= B")
    return a, b


def parse_methods(text: str) -> tuple[str, ...]:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in methods if m not in ALL_METHODS]
    if bad or not methods:
        raise UsageError(f"unknown methods {bad}; choose from {','.join(ALL_METHODS)}")
    return methods


def _budget(args) -> Budget:
    return Budget(
        lattice_max_dim=args.budget_lattice_dim,
        lattice_max_dilation=args.budget_lattice_dilation,
        max_extensions=args.budget_extensions,
        omega_max_assignments=args.budget_omega,
    )


def _fmt_poly(coeffs, full: bool) -> str:
    if full:
        return "(" + ",".join(str(c) for c in coeffs) + ")"
    return str(IntPolynomial(tuple(coeffs)))


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _document(argv: Sequence[str], items: list[dict], passed: bool) -> dict:
    return {"version": __version__, "command": list(argv), "items": items, "pass": passed}


def cmd_zigzag(args, argv) -> int:
    lo, hi = parse_range(args.range)
    methods = parse_methods(args.methods)
    reports = verify_kirillov(hi, methods, _budget(args), n_min=lo)
    timings = not args.no_timings
    items = [r.to_dict(include_timings=timings) for r in reports]
    passed = all(r.passed for r in reports)
    if args.json:
        sys.stdout.write(dumps(_document(argv, items, passed)))
    else:
        header = ["n", "delta", "unimodal", "peak", "sum", "identities"]
        if timings:
            header += [f"{m}_ms" for m in methods]
        rows = []
        for r in reports:
            row = [
                str(r.d),
                _fmt_poly(r.delta, args.full) if r.deltas else "-",
                _yes(r.unimodal),
                "-" if r.peak is None else str(r.peak),
                str(sum(r.delta)) if r.deltas else "-",
                "ok" if r.identities_ok else "FAIL",
            ]
            if timings:
                row += [
                    f"{r.timings[m] * 1e3:.1f}" if m in r.timings else "skipped" for m in methods
                ]
            rows.append(row)
        sys.stdout.write(_table(header, rows))
    for r in reports:
        for method, why in r.skipped.items():
            print(f"n={r.d}: method {method} skipped: {why}", file=sys.stderr)
        if not r.passed:
            print(f"n={r.d}: check failed", file=sys.stderr)
    if not passed:
        return EXIT_FAIL
    if any(r.skipped for r in reports):
        return EXIT_USAGE
    return EXIT_OK


def cmd_poset(args, argv) -> int:
    P = load_poset(args.file)
    what = args.what
    passed = True
    lines: list[str] = []
    if what == "chains":
        chains = all_chains(P)
        maximal = maximal_chains(P)
        items = [{"kind": "chains", "chains": chains, "maximal_chains": maximal}]
        lines.append(f"{len(chains)} chains, {len(maximal)} maximal")
        lines += [" < ".join(map(str, c)) + ("   (maximal)" if c in maximal else "") for c in chains]
    elif what == "rank":
        try:
            g = rank_function(P)
            items = [{"kind": "rank", "graded": True, "rank": g.rank, "rho": g.rho}]
            lines.append(f"graded of rank {g.rank}")
            lines += [f"rho({x}) = {r}" for x, r in enumerate(g.rho)]
        except NotGradedError as e:
            a, b = e.witness
            items = [{"kind": "rank", "graded": False, "witness": [a, b]}]
            lines.append(str(e))
    elif what == "extensions":
        exts = list(linear_extensions(P))
        items = [{"kind": "extensions", "count": len(exts), "extensions": exts}]
        lines.append(f"{len(exts)} linear extension{'s' if len(exts) != 1 else ''}")
        lines += [" ".join(map(str, e)) for e in exts]
    elif what == "delta":
        methods = parse_methods(args.methods) if args.methods else ("omega",)
        report = cross_verify(P, methods, _budget(args))
        items = [{"kind": "delta", **report.to_dict(include_timings=not args.no_timings)}]
        passed = report.passed
        lines.append(f"delta = {_fmt_poly(report.delta, args.full)}")
    else:  # verify
        methods = parse_methods(args.methods) if args.methods else ALL_METHODS
        report = cross_verify(P, methods, _budget(args))
        w = natural_labeling(P)
        gas = verify_gasharov(P, w)
        items = [
            {"kind": "cross_verify", **report.to_dict(include_timings=not args.no_timings)},
            {"kind": "gasharov", "labeling": w.labels, **gas.to_dict()},
        ]
        passed = report.passed and gas.passed
        lines += [
            f"poset: {report.poset}",
            f"delta = {_fmt_poly(report.delta, args.full)}",
            f"identities_ok = {str(report.identities_ok).lower()}",
            f"unimodal = {_yes(report.unimodal)} (peak {report.peak})",
            f"symmetric = {_yes(report.symmetric)}",
            f"nonnegative = {_yes(report.nonnegative)}",
            "graded: " + (f"rank {gas.rank}" if gas.graded else "no"),
            "W-polynomial (natural labeling) = " + _fmt_poly(gas.w, args.full)
            + (" unimodal" if gas.unimodal else " NOT unimodal")
            + ("" if gas.hypotheses_hold else f" [not asserted: {', '.join(gas.failed_hypotheses)}]"),
        ]
    if args.json:
        sys.stdout.write(dumps(_document(argv, items, passed)))
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_selftest(args, argv) -> int:
    if args.count < 0 or args.max_size < 1:
        raise UsageError("--count must be >= 0 and --max-size >= 1")
    result = run_selftest(args.seed, args.count, args.max_size, _budget(args))
    if args.json:
        sys.stdout.write(dumps(_document(argv, result.items, result.passed)))
    else:
        random_items = sum(1 for it in result.items if it["kind"] == "random")
        graded_items = len(result.items) - random_items
        sys.stdout.write(
            f"seed {args.seed}: {random_items} random posets, {graded_items} graded posets: "
            f"{'pass' if result.passed else 'FAIL'}\n"
        )
    if result.failure is not None:
        print("first failing poset:", file=sys.stderr)
        sys.stderr.write(result.failure["poset"])
        return EXIT_FAIL
    return EXIT_OK


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    b = Budget()
    p.add_argument("--budget-lattice-dim", type=int, default=b.lattice_max_dim)
    p.add_argument("--budget-lattice-dilation", type=int, default=b.lattice_max_dilation)
    p.add_argument("--budget-extensions", type=int, default=b.max_extensions)
    p.add_argument("--budget-omega", type=int, default=b.omega_max_assignments)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainpoly",
        description="Ehrhart delta-polynomials of chain polytopes of finite posets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zigzag", help="check unimodality of delta(P_n) over a range of n")
    z.add_argument("range", help="N or A..B")
    z.add_argument("--methods", default=",".join(ALL_METHODS))
    z.add_argument("--full", action="store_true", help="print stored delta-vectors with trailing zeros")
    z.add_argument("--json", action="store_true")
    z.add_argument("--no-timings", action="store_true")
    _add_budget_flags(z)
    z.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("poset", help="computations on a poset file")
    p.add_argument("file")
    p.add_argument("what", choices=["chains", "rank", "extensions", "delta", "verify"])
    p.add_argument("--methods", default=None)
    p.add_argument("--full", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timings", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_poset)

    s = sub.add_parser("selftest", help="random-poset property suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--max-size", type=int, default=5)
    s.add_argument("--json", action="store_true")
    _add_budget_flags(s)
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, argv)
    except UsageError as e:
        print(f"chainpoly: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"chainpoly: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PosetError, OSError) as e:
        print(f"chainpoly: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
