"""Command-line front end.

Exit statuses: 0 success, 1 verification failure, 2 usage error,
3 numeric or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys

from . import extensions as ext
from . import ivp_series as ivp
from .errors import LemniscaticError, UnknownSuiteError
from .verification import (
    PROFILES,
    SUITE_NAMES,
    GridSpec,
    reports_to_json,
    run_all,
    run_suite,
)
from .weierstrass import POLE_RADIUS, default_context, reduce, wp, wp_prime

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

FUNCTIONS = ("s", "c", "S", "C", "P", "sl", "sd", "wp", "wp_prime")

_REAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_REAL})(?:(?P<sign>[+-])(?P<im>{_REAL})?i)?|(?P<imonly>[+-]?(?:{_REAL})?)i)$"
)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (no whitespace)."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r} (expected a, bi, a+bi or a-bi)")
    if m.group("re") is not None:
        re_part = float(m.group("re"))
        if m.group("sign") is None:
            return complex(re_part, 0.0)
        im = float(m.group("im")) if m.group("im") else 1.0
        return complex(re_part, im if m.group("sign") == "+" else -im)
    im_text = m.group("imonly")
    if im_text in ("", "+"):
        return 1j
    if im_text == "-":
        return -1j
    return complex(0.0, float(im_text))


def _digits(text: str) -> int:
    n = int(text)
    if not 1 <= n <= 17:
        raise argparse.ArgumentTypeError("--digits must lie in [1, 17]")
    return n


def _tol_override(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}") from None


def _round(x: float, digits: int) -> float:
    # + 0.0 folds -0.0 into 0.0
    return float(f"{x:.{digits}g}") + 0.0


def _series_value(fn, z):
    order = ivp.required_order(max(abs(z), 1e-3))
    tp = ivp.default_pair(order)
    return ivp.eval_s(tp, z) if fn == "s" else ivp.eval_c(tp, z)


def evaluate(fn: str, z: complex) -> complex:
    ctx = default_context()
    if fn in ("s", "c"):
        return _series_value(fn, z)
    table = {
        "S": ext.S_eval,
        "C": ext.C_eval,
        "P": ext.P_eval,
        "sl": ext.sl_eval,
        "sd": ext.sd_eval,
        "wp": wp,
        "wp_prime": wp_prime,
    }
    return table[fn](ctx, z)


def singular_distance(fn: str, z: complex) -> float:
    """Distance from ``z`` to the nearest singular point of ``fn``."""
    ctx = default_context()
    if fn in ("wp", "wp_prime"):
        return abs(reduce(ctx, z).z0)
    if fn == "sl":
        r2 = math.sqrt(2.0)
        return r2 * abs(z / r2 - ext.nearest_pole(ctx, z / r2))
    if fn == "sd":
        return 2 * abs(z / 2 - ext.nearest_pole(ctx, z / 2))
    return abs(z - ext.nearest_pole(ctx, z))


def _emit_rows(header, rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_constants(args, out):
    ctx = default_context()
    radii = ivp.radius_constants()
    d = args.digits
    record = {
        "picard_radius": _round(radii["picard_radius"], d),
        "scalar_radius": _round(radii["scalar_radius"], d),
        "omega": _round(ctx.omega, d),
        "omega_over_sqrt2": _round(radii["true_radius"], d),
        "periods": [[_round(p.real, d), _round(p.imag, d)] for p in ctx.periods],
        "g2": ctx.g2,
        "g3": ctx.g3,
    }
    if args.format == "json":
        out.write(json.dumps(record) + "\n")
    else:
        rows = []
        for key, value in record.items():
            if key == "periods":
                rows.append(["period_real", repr(value[0][0])])
                rows.append(["period_imag", repr(value[1][1])])
            else:
                rows.append([key, repr(value)])
        _emit_rows(["name", "value"], rows, out)
    return EXIT_OK


def cmd_eval(args, out):
    value = evaluate(args.fn, args.z)
    d = args.digits
    z = args.z
    row = [_round(z.real, d), _round(z.imag, d), _round(value.real, d), _round(value.imag, d)]
    if args.format == "json":
        out.write(json.dumps({"fn": args.fn, "z": row[:2], "value": row[2:]}) + "\n")
    else:
        _emit_rows(["re_z", "im_z", "re_f", "im_f"], [[repr(x) for x in row]], out)
    return EXIT_OK


def cmd_grid(args, out):
    if args.points < 2 or not args.half_width > 0 or args.exclusion < 0:
        raise _Usage("grid needs --points >= 2, --half-width > 0, --exclusion >= 0")
    grid = GridSpec(args.center, args.half_width, args.points, args.exclusion)
    d = args.digits
    rows = []
    for z in grid.points():
        value = None
        if singular_distance(args.fn, z) > max(grid.exclusion_radius, POLE_RADIUS):
            try:
                value = evaluate(args.fn, z)
            except LemniscaticError:
                value = None
        rows.append((_round(z.real, d), _round(z.imag, d), value))
    if args.format == "json":
        payload = [
            [zr, zi, None, None] if v is None else [zr, zi, _round(v.real, d), _round(v.imag, d)]
            for zr, zi, v in rows
        ]
        out.write(json.dumps(payload) + "\n")
    else:
        table = []
        for zr, zi, v in rows:
            if v is None:
                table.append([repr(zr), repr(zi), "", "", "1"])
            else:
                table.append([repr(zr), repr(zi), repr(_round(v.real, d)), repr(_round(v.imag, d)), "0"])
        _emit_rows(["re_z", "im_z", "re_f", "im_f", "excluded"], table, out)
    return EXIT_OK


def cmd_coeffs(args, out):
    if args.n < 1:
        raise _Usage("--n must be at least 1")
    tp = ivp.taylor_coefficients(args.n)
    if args.format == "json":
        out.write(json.dumps({"n": list(range(tp.order + 1)), "a": list(tp.a), "b": list(tp.b)}) + "\n")
    else:
        rows = [[str(n), repr(a), repr(b)] for n, (a, b) in enumerate(zip(tp.a, tp.b))]
        _emit_rows(["n", "a_n", "b_n"], rows, out)
    return EXIT_OK


def cmd_poles(args, out):
    m_lo, m_hi = args.m
    n_lo, n_hi = args.n
    if m_lo > m_hi or n_lo > n_hi:
        raise _Usage("pole ranges must satisfy lo <= hi")
    poles = ext.pole_set(default_context(), range(m_lo, m_hi + 1), range(n_lo, n_hi + 1))
    d = args.digits
    rows = [[_round(p.real, d), _round(p.imag, d)] for p in poles]
    if args.format == "json":
        out.write(json.dumps(rows) + "\n")
    else:
        _emit_rows(["re", "im"], [[repr(a), repr(b)] for a, b in rows], out)
    return EXIT_OK


def cmd_verify(args, out):
    names = []
    for item in args.suite or ["all"]:
        names.extend(x for x in item.split(",") if x)
    overrides = dict(args.tol or [])
    for name in list(overrides) + [n for n in names if n != "all"]:
        if name not in SUITE_NAMES:
            raise UnknownSuiteError(f"unknown suite {name!r}; valid suites: all, {', '.join(SUITE_NAMES)}")
    tolerances = PROFILES[args.profile]
    if "all" in names:
        reports = run_all(args.profile, overrides)
    else:
        reports = [run_suite(n, tol=overrides.get(n, tolerances[n])) for n in names]
    if args.format == "json":
        out.write(reports_to_json(reports) + "\n")
    else:
        rows = [
            [r.suite, str(r.samples_evaluated), str(r.samples_excluded), repr(r.max_residual), repr(r.tolerance), str(r.passed).lower()]
            for r in reports
        ]
        _emit_rows(["suite", "samples_evaluated", "samples_excluded", "max_residual", "tolerance", "passed"], rows, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--digits", type=_digits, default=argparse.SUPPRESS, help="significant digits, 1..17")

    parser = argparse.ArgumentParser(
        prog="lemniscatic",
        description="Evaluate and verify the lemniscatic extensions of s' = c^3, c' = -s^3.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("constants", parents=[common], help="radii, half-period, periods, invariants")

    p = sub.add_parser("eval", parents=[common], help="evaluate one function at one point")
    p.add_argument("--fn", choices=FUNCTIONS, required=True)
    p.add_argument("--z", type=parse_complex, required=True, help="a, bi, a+bi or a-bi; use --z=-1 for negatives")

    p = sub.add_parser("grid", parents=[common], help="sample a function on a square grid")
    p.add_argument("--fn", choices=FUNCTIONS, required=True)
    p.add_argument("--center", type=parse_complex, default=0j)
    p.add_argument("--half-width", type=float, default=0.5)
    p.add_argument("--points", type=int, default=21, help="points per side (>= 2)")
    p.add_argument("--exclusion", type=float, default=0.0, help="exclusion radius around singular points")

    p = sub.add_parser("coeffs", parents=[common], help="Taylor coefficients of s and c")
    p.add_argument("--n", type=int, required=True, help="highest order (>= 1)")

    p = sub.add_parser("poles", parents=[common], help="poles of s^2, c^2, s c over period ranges")
    p.add_argument("--m", type=int, nargs=2, metavar=("LO", "HI"), default=[0, 0])
    p.add_argument("--n", type=int, nargs=2, metavar=("LO", "HI"), default=[0, 0])

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("--suite", action="append", help="suite name, comma list, or 'all' (repeatable)")
    p.add_argument("--tol", action="append", type=_tol_override, metavar="NAME=VALUE")
    p.add_argument("--profile", choices=sorted(PROFILES), default="default")
    return parser


_COMMANDS = {
    "constants": cmd_constants,
    "eval": cmd_eval,
    "grid": cmd_grid,
    "coeffs": cmd_coeffs,
    "poles": cmd_poles,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "json"
    if not hasattr(args, "digits"):
        args.digits = 15
    try:
        return _COMMANDS[args.command](args, out)
    except (UnknownSuiteError, _Usage) as exc:
        parser.print_usage(sys.stderr)
        print(f"lemniscatic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LemniscaticError as exc:
        nearest = getattr(exc, "nearest", None)
        detail = f" (nearest singular point {nearest.real!r}{nearest.imag:+}i)" if nearest is not None else ""
        print(f"lemniscatic: {type(exc).__name__}: {exc}{detail}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
