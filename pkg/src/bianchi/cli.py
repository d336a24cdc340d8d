"""Command-line interface.

Subcommands: reduce, reduce-form, membership, count, sharpness, verify.
All rationals cross the boundary as exact strings like "7/4"; outputs are
JSON (or CSV for tables) and deterministic.  Exit codes: 0 success,
2 invalid d, 3 malformed rational input, 4 form not positive definite,
5 exact counting inequality violated, 1 failed verification.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .counting import build_table, fit_growth, sandwich_check
from .fundamental import (
    above_hemispheres,
    in_fundamental_domain,
    in_polygon,
    minimal_denominator,
)
from .geometry import GroupElem, Point
from .hermitian import HermitianForm, reduce_form
from .reduction import ReductionCertificate, certificate_bound, reduce_point, sharpness_witness
from .ring import AlgInt, FieldElem, RingContext

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_D = 2
EXIT_BAD_RATIONAL = 3
EXIT_NOT_DEFINITE = 4
EXIT_COUNT_VIOLATION = 5


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _context(d: int) -> RingContext:
    try:
        return RingContext(d)
    except ValueError as exc:
        raise CliError(EXIT_BAD_D, str(exc))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_BAD_RATIONAL, f"not an exact rational: {text!r}")


def _point(ctx: RingContext, z_parts: Sequence[str], t: Optional[str], t2: Optional[str]) -> Point:
    za, zb = (_rational(p) for p in z_parts)
    if (t is None) == (t2 is None):
        raise CliError(EXIT_BAD_RATIONAL, "exactly one of --t / --t2 is required")
    if t is not None:
        tv = _rational(t)
        s = tv * tv
    else:
        s = _rational(t2)
    if s <= 0:
        raise CliError(EXIT_BAD_RATIONAL, "squared height must be positive")
    return Point(FieldElem(za, zb, ctx.d), s)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_reduce(args: argparse.Namespace) -> int:
    ctx = _context(args.d)
    p = _point(ctx, args.z, args.t, args.t2)
    cert = reduce_point(ctx, p)
    _emit(cert.to_json())
    return EXIT_OK if cert.bound_ok else EXIT_VERIFY_FAILED


def _cmd_reduce_form(args: argparse.Namespace) -> int:
    ctx = _context(args.d)
    ba, bb = args.b
    form = HermitianForm(args.a, AlgInt(ba, bb, ctx.d), args.dd)
    if not form.is_positive_definite():
        print(
            f"form is not positive definite (discriminant {form.discriminant()})",
            file=sys.stderr,
        )
        return EXIT_NOT_DEFINITE
    result = reduce_form(ctx, form)
    _emit(result.to_json())
    return EXIT_OK


def _cmd_membership(args: argparse.Namespace) -> int:
    ctx = _context(args.d)
    p = _point(ctx, args.z, args.t, args.t2)
    w = minimal_denominator(ctx, p)
    _emit(
        {
            "in_P": in_polygon(ctx, p.z),
            "in_B": w.m_star >= 1,
            "in_F": w.m_star >= 1 and in_polygon(ctx, p.z),
            "m_star": str(w.m_star),
            "witness": {
                "gamma0": [w.gamma0.a, w.gamma0.b],
                "delta0": [w.delta0.a, w.delta0.b],
            },
        }
    )
    return EXIT_OK


def _cmd_count(args: argparse.Namespace) -> int:
    ctx = _context(args.d)
    try:
        grid = sorted({int(x) for x in args.tsq.split(",") if x.strip()})
    except ValueError:
        raise CliError(EXIT_BAD_RATIONAL, f"bad height grid: {args.tsq!r}")
    if not grid:
        raise CliError(EXIT_BAD_RATIONAL, "empty height grid")
    if grid[0] < 1:
        raise CliError(EXIT_BAD_RATIONAL, "heights must be at least 1")
    violations = []
    print("T_sq,N,N_tilde,X")
    rows = []
    for t_sq in grid:
        rep = sandwich_check(ctx, t_sq, workers=args.workers)
        rows.append(rep)
        print(f"{rep.t_sq},{rep.n},{rep.n_tilde},{rep.x}")
        if not (rep.lower_ok and rep.upper_ok):
            violations.append(rep)
    fit = None
    if len(rows) >= 4:
        from .counting import CountRow, CountTable

        table = CountTable(ctx.d, [CountRow(r.t_sq, r.n, r.n_tilde, r.x) for r in rows])
        g = fit_growth(table)
        fit = {"slope_N": g.slope_n, "slope_X": g.slope_x, "rows": g.rows}
    else:
        fit = {"slope_N": None, "slope_X": None, "rows": len(rows)}
    print(json.dumps(fit))
    for rep in violations:
        print(f"sandwich violation at T_sq={rep.t_sq}: {rep}", file=sys.stderr)
    return EXIT_COUNT_VIOLATION if violations else EXIT_OK


def _cmd_sharpness(args: argparse.Namespace) -> int:
    ctx = _context(args.d)
    if args.n_max < 2:
        raise CliError(EXIT_BAD_RATIONAL, "n_max must be at least 2")
    print("n,height_sq,D_sq,ratio")
    for n in range(2, args.n_max + 1):
        sigma, p = sharpness_witness(ctx, n)
        hsq = sigma.height_sq()
        dsq = p.complexity_sq()
        print(f"{n},{hsq},{dsq},{Fraction(n * n - 1, 4 * n * n)}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    ctx = _context(args.d)
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    else:
        obj = json.load(sys.stdin)
    cert = ReductionCertificate.from_json(ctx.d, obj)
    checks = {
        "height_matches": cert.gamma.height_sq() == cert.height_sq,
        "image_in_F": in_fundamental_domain(ctx, cert.image),
        "bound_ok": bool(
            certificate_bound(ctx) * (cert.complexity_sq * cert.complexity_sq)
            >= cert.height_sq
        ),
    }
    origin = cert.gamma.inverse().apply(cert.image)
    checks["complexity_matches"] = origin.complexity_sq() == cert.complexity_sq
    if "f_red" in obj:
        f_red = HermitianForm.from_json(ctx.d, obj["f_red"])
        checks["f_red_point_matches"] = (
            f_red.is_positive_definite() and f_red.to_point() == cert.image
        )
    ok = all(checks.values())
    _emit({"verified": ok, "checks": checks})
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bianchi",
        description=(
            "Exact reduction to Bianchi fundamental domains, Hermitian form "
            "reduction, and bounded-height counting."
        ),
    )
    # let negative rationals like -7/9 pass as option values
    parser._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")
    sub = parser.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("reduce", help="reduce a point into the fundamental domain")
    pr.add_argument("--d", type=int, required=True, help="squarefree positive integer")
    pr.add_argument(
        "--z",
        nargs=2,
        required=True,
        metavar=("A", "B"),
        help="complex coordinate A + B*sqrt(-d), exact rationals",
    )
    pr.add_argument("--t", help="height t as an exact rational (s = t^2)")
    pr.add_argument("--t2", help="squared height s as an exact rational")
    pr.set_defaults(func=_cmd_reduce)

    pf = sub.add_parser("reduce-form", help="reduce a positive definite Hermitian form")
    pf.add_argument("--d", type=int, required=True)
    pf.add_argument("--a", type=int, required=True, help="leading coefficient")
    pf.add_argument(
        "--b", nargs=2, type=int, required=True, metavar=("a", "b"),
        help="off-diagonal entry as a + b*omega",
    )
    pf.add_argument("--dd", type=int, required=True, help="trailing coefficient")
    pf.set_defaults(func=_cmd_reduce_form)

    pm = sub.add_parser("membership", help="fundamental domain membership of a point")
    pm.add_argument("--d", type=int, required=True)
    pm.add_argument("--z", nargs=2, required=True, metavar=("A", "B"))
    pm.add_argument("--t")
    pm.add_argument("--t2")
    pm.set_defaults(func=_cmd_membership)

    pc = sub.add_parser("count", help="bounded-height counts and growth fit")
    pc.add_argument("--d", type=int, required=True)
    pc.add_argument(
        "--tsq", required=True, help="comma-separated integer squared heights"
    )
    pc.add_argument("--workers", type=int, default=1)
    pc.set_defaults(func=_cmd_count)

    ps = sub.add_parser("sharpness", help="the witness family for the sharp exponent")
    ps.add_argument("--n-max", type=int, required=True)
    ps.add_argument("--d", type=int, default=1)
    ps.set_defaults(func=_cmd_sharpness)

    pv = sub.add_parser("verify", help="re-verify a reduction certificate")
    pv.add_argument("--d", type=int, required=True)
    pv.add_argument("--file", help="certificate JSON (defaults to stdin)")
    pv.set_defaults(func=_cmd_verify)

    for sp in sub.choices.values():
        sp._negative_number_matcher = parser._negative_number_matcher

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
