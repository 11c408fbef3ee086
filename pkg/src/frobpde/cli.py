"""Command-line front end.

Subcommands: classify, solve, scan-resonance, euler, catalog list|solve,
verify, transform (euler-coordinates | prepare-coordinates), radius.

Exit codes: 0 success, 1 input error (bad JSON, schema violation, expression
syntax, unknown flags), 2 mathematical refusal (resonant point, off-conic
point, unsatisfiable constraints).

Payloads are deterministic: no timestamps, canonical coefficient order, every
number printed with 17 significant digits.  `--meta` writes a timestamped
record to stderr, keeping stdout byte-identical for identical inputs.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

from . import catalog as catalog_mod
from . import __version__
from .errors import (
    BasePointNotOnConic,
    ComplexCoefficients,
    ConstraintViolated,
    ExprSyntaxError,
    FrobPDEError,
    MissingParameter,
    NoSolution,
    ResonantPoint,
    SchemaError,
    UnboundParameter,
)
from .euler import EulerPDE, euler_coords, integral_points
from .expr_parser import parse_expr, to_series
from .frobenius import RegularSingularPDE, prepare_coordinates, radius_estimate, solve
from .indicial import ALL_SOLUTIONS, DEFAULT_TOL, classify, resonance_scan, solve_for_s
from .verify import residual_max

_REFUSALS = (
    BasePointNotOnConic,
    ResonantPoint,
    NoSolution,
    ComplexCoefficients,
    ConstraintViolated,
)
_INPUT_ERRORS = (
    SchemaError,
    ExprSyntaxError,
    UnboundParameter,
    MissingParameter,
    OSError,
    json.JSONDecodeError,
    ValueError,
)


# ---------------------------------------------------------------------------
# Deterministic JSON emission with 17 significant digits
# ---------------------------------------------------------------------------


def _fmt_num(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if v != v:  # NaN
        return '"nan"'
    if v in (float("inf"), float("-inf")):
        return '"inf"' if v > 0 else '"-inf"'
    return format(v, ".17g")


def _dump(obj):
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, int, float)):
        return _fmt_num(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit_json(obj):
    sys.stdout.write(_dump(obj) + "\n")


def _emit_csv(header, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    sys.stdout.write(out.getvalue())


# ---------------------------------------------------------------------------
# Problem loading
# ---------------------------------------------------------------------------


@dataclass
class ProblemSpec:
    A: complex
    B: complex
    C: complex
    a: object  # CSeries2
    b: object
    c: object
    params: dict
    point: object  # "auto" or (complex, complex)
    order: int
    tol: float


def _complex_member(value, pointer):
    if isinstance(value, bool):
        raise SchemaError("expected a number or [re, im] pair", pointer)
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise SchemaError("expected a number or [re, im] pair", pointer)


_TOP_KEYS = {"A", "B", "C", "a", "b", "c", "params", "point", "order", "tolerances"}


def load_problem(path):
    """Read, validate and resolve a problem JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise SchemaError("problem file must contain a JSON object", "")
    for key in raw:
        if key not in _TOP_KEYS:
            raise SchemaError(f"unknown member {key!r}", f"/{key}")
    for key in ("A", "B", "C", "a", "b", "c", "order"):
        if key not in raw:
            raise SchemaError(f"missing required member {key!r}", "")

    A = _complex_member(raw["A"], "/A")
    B = _complex_member(raw["B"], "/B")
    C = _complex_member(raw["C"], "/C")

    order = raw["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise SchemaError("order must be an integer >= 1", "/order")

    params = {}
    if "params" in raw:
        if not isinstance(raw["params"], dict):
            raise SchemaError("params must be an object", "/params")
        for name, value in raw["params"].items():
            params[name] = _complex_member(value, f"/params/{name}")

    series = []
    for key in ("a", "b", "c"):
        text = raw[key]
        if not isinstance(text, str):
            raise SchemaError(f"{key} must be an expression string", f"/{key}")
        series.append(to_series(parse_expr(text), params, order))

    point = "auto"
    if "point" in raw:
        p = raw["point"]
        if p == "auto":
            point = "auto"
        elif isinstance(p, list) and len(p) == 2:
            point = (_complex_member(p[0], "/point/0"), _complex_member(p[1], "/point/1"))
        else:
            raise SchemaError('point must be "auto" or a [r, s] pair', "/point")

    tol = DEFAULT_TOL
    if "tolerances" in raw:
        tols = raw["tolerances"]
        if not isinstance(tols, dict):
            raise SchemaError("tolerances must be an object", "/tolerances")
        for key, value in tols.items():
            if key != "tol":
                raise SchemaError(f"unknown tolerance {key!r}", f"/tolerances/{key}")
            if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
                raise SchemaError("tol must be a positive number", "/tolerances/tol")
            tol = float(value)

    return ProblemSpec(A, B, C, series[0], series[1], series[2], params, point, order, tol)


def _pde_of(spec):
    return RegularSingularPDE(spec.A, spec.B, spec.C, spec.a, spec.b, spec.c)


def _auto_point(spec, pde):
    """Deterministic nonresonant-point search.

    r runs over 0, 1/2, -1/2, 1, -1, 3/2, ...; for each r the solve_for_s
    roots are tried in their fixed order; the first point whose resonance
    scan up to the problem order is clean wins.
    """
    conic = pde.conic()
    for k in range(0, 81):
        r = 0.0 if k == 0 else ((k + 1) // 2) * 0.5 * (1 if k % 2 else -1)
        try:
            roots = solve_for_s(conic, r)
        except NoSolution:
            continue
        if roots is ALL_SOLUTIONS:
            roots = [0j]
        for s in roots:
            try:
                report = resonance_scan(conic, r, s, spec.order, spec.tol)
            except BasePointNotOnConic:
                continue
            if not report.hits:
                return complex(r), complex(s)
    raise NoSolution("auto point search found no nonresonant conic point")


def _resolve_point(spec, pde):
    if spec.point == "auto":
        return _auto_point(spec, pde)
    return spec.point


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_classify(args):
    spec = load_problem(args.problem)
    conic = _pde_of(spec).conic()
    result = classify(conic, spec.tol)
    _emit_json({"conic": conic.to_json(), "class": result.to_json()})


def _cmd_solve(args):
    spec = load_problem(args.problem)
    pde = _pde_of(spec)
    r0, s0 = _resolve_point(spec, pde)
    sol = solve(pde, r0, s0, spec.order, tol=spec.tol, resonance_policy=args.resonance_policy)
    if args.format == "csv":
        _emit_csv(("q1", "q2", "re", "im"), sol.to_csv_rows())
    else:
        _emit_json(sol.to_json())


def _cmd_scan(args):
    spec = load_problem(args.problem)
    pde = _pde_of(spec)
    r0, s0 = _resolve_point(spec, pde)
    report = resonance_scan(pde.conic(), r0, s0, spec.order, spec.tol)
    if args.format == "csv":
        _emit_csv(("q1", "q2", "magnitude"), [(q1, q2, m) for (q1, q2), m in report.hits])
    else:
        _emit_json(report.to_json())


def _cmd_verify(args):
    spec = load_problem(args.problem)
    pde = _pde_of(spec)
    r0, s0 = _resolve_point(spec, pde)
    sol = solve(pde, r0, s0, spec.order, tol=spec.tol, resonance_policy=args.resonance_policy)
    report = residual_max(pde, sol)
    if args.format == "csv":
        rows = [(n, v) for n, v in sorted(report.per_layer.items())]
        _emit_csv(("layer", "max_abs_residual"), rows)
    else:
        _emit_json({"residual": report.to_json()})


def _cmd_radius(args):
    spec = load_problem(args.problem)
    pde = _pde_of(spec)
    r0, s0 = _resolve_point(spec, pde)
    sol = solve(pde, r0, s0, spec.order, tol=spec.tol, resonance_policy=args.resonance_policy)
    estimate = radius_estimate(sol)
    _emit_json(
        {
            "r0": [sol.r0.real, sol.r0.imag],
            "s0": [sol.s0.real, sol.s0.imag],
            "order": sol.order,
            "radius_estimate": estimate,
        }
    )


def _is_integral(z):
    return z.imag == 0 and z.real == int(z.real)


def _cmd_euler(args):
    coeffs = [complex(v) for v in (args.A, args.B, args.C, args.D, args.E, args.F)]
    pde = EulerPDE(*coeffs)
    conic = pde.conic()
    payload = {"conic": conic.to_json(), "class": classify(conic, args.tol).to_json()}

    samples = []
    for k in range(0, 9):
        r = 0.0 if k == 0 else ((k + 1) // 2) * 0.5 * (1 if k % 2 else -1)
        try:
            roots = solve_for_s(conic, r)
        except NoSolution:
            continue
        if roots is ALL_SOLUTIONS:
            roots = [0j]
        for s in roots:
            samples.append([r, 0.0, s.real, s.imag])
        if len(samples) >= 4:
            break
    payload["monomial_exponents"] = samples

    families = {}
    A, B, C = coeffs[0], coeffs[1], coeffs[2]
    if all(_is_integral(z) for z in (A, B, C)):
        iA, iB, iC = int(A.real), int(B.real), int(C.real)
        for family, kwargs in (
            ("elliptic", {"A": iA, "C": iC}),
            ("parabolic", {"A": iA, "B": iB, "C": iC}),
            ("hyperbolic", {"A": iA, "B": iB}),
        ):
            try:
                families[family] = integral_points(family, **kwargs).to_json()
            except ConstraintViolated:
                pass
    payload["integral_point_families"] = families
    _emit_json(payload)


def _cmd_catalog_list(args):
    _emit_json(catalog_mod.list_entries())


def _parse_param(text):
    if "=" not in text:
        raise SchemaError(f"--param needs name=value, got {text!r}", "/params")
    name, _, value = text.partition("=")
    try:
        return name, complex(value)
    except ValueError:
        raise SchemaError(f"cannot parse parameter value {value!r}", f"/params/{name}") from None


def _cmd_catalog_solve(args):
    params = dict(_parse_param(p) for p in args.param or [])
    ent = catalog_mod.entry(args.name, **params)
    if args.point == "auto":
        r0, s0 = catalog_mod.default_point(ent)
    else:
        parts = args.point.split(",")
        if len(parts) != 2:
            raise SchemaError('--point needs "r,s" or "auto"', "/point")
        r0, s0 = (complex(p) for p in parts)
    sol = catalog_mod.solve_entry(ent, r0, s0, args.order)
    if args.format == "csv":
        _emit_csv(("q1", "q2", "re", "im"), sol.to_csv_rows())
    else:
        _emit_json(sol.to_json())


def _cmd_transform(args):
    if args.what == "euler-coordinates":
        if len(args.values) != 6:
            raise SchemaError("euler-coordinates needs six coefficients A B C D E F", "")
        coeffs = [complex(v) for v in args.values]
        out = euler_coords(tuple(coeffs), args.direction)
        _emit_json({"direction": args.direction, "coefficients": [[z.real, z.imag] for z in out]})
        return
    # prepare-coordinates
    if args.A is None or args.C is None:
        raise SchemaError("prepare-coordinates needs --A and --C expressions", "")
    A_series = to_series(parse_expr(args.A), {}, args.order)
    C_series = to_series(parse_expr(args.C), {}, args.order)  # written in y
    f, g = prepare_coordinates(A_series, C_series)
    _emit_json({"f": f.to_json_array(), "g": g.to_json_array()})


# ---------------------------------------------------------------------------
# Argument parsing and dispatch
# ---------------------------------------------------------------------------


class _CLIUsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _CLIUsageError(message)


def _add_common(parser, fmt=True):
    if fmt:
        parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--meta", action="store_true", help="write a timestamped record to stderr")


def build_parser():
    parser = _ArgumentParser(prog="frobpde", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="indicial conic and its classification")
    p.add_argument("problem")
    _add_common(p, fmt=False)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="run the Frobenius recurrence")
    p.add_argument("problem")
    p.add_argument("--resonance-policy", choices=("strict", "skip_removable"), default="strict")
    _add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("scan-resonance", help="resonance scan at the problem point")
    p.add_argument("problem")
    _add_common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("euler", help="Euler PDE report: conic, class, integral points")
    for name in ("A", "B", "C", "D", "E", "F"):
        p.add_argument(name, type=float)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _add_common(p, fmt=False)
    p.set_defaults(func=_cmd_euler)

    p = sub.add_parser("catalog", help="named models")
    catsub = p.add_subparsers(dest="catalog_command", required=True)
    pl = catsub.add_parser("list", help="list catalog entries")
    _add_common(pl, fmt=False)
    pl.set_defaults(func=_cmd_catalog_list)
    ps = catsub.add_parser("solve", help="solve a catalog entry")
    ps.add_argument("name")
    ps.add_argument("--param", action="append", metavar="NAME=VALUE")
    ps.add_argument("--order", type=int, default=20)
    ps.add_argument("--point", default="auto", help='"r,s" or "auto" (entry default)')
    _add_common(ps)
    ps.set_defaults(func=_cmd_catalog_solve)

    p = sub.add_parser("verify", help="independent residual check of a solve")
    p.add_argument("problem")
    p.add_argument("--resonance-policy", choices=("strict", "skip_removable"), default="strict")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("transform", help="coordinate transforms")
    p.add_argument("what", choices=("euler-coordinates", "prepare-coordinates"))
    p.add_argument("values", nargs="*", help="six coefficients for euler-coordinates")
    p.add_argument("--direction", choices=("to_constant", "to_euler"), default="to_constant")
    p.add_argument("--A", help="leading series in x for prepare-coordinates")
    p.add_argument("--C", help="leading series in y for prepare-coordinates")
    p.add_argument("--order", type=int, default=12)
    _add_common(p, fmt=False)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("radius", help="solve and estimate the convergence radius")
    p.add_argument("problem")
    p.add_argument("--resonance-policy", choices=("strict", "skip_removable"), default="strict")
    _add_common(p, fmt=False)
    p.set_defaults(func=_cmd_radius)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _CLIUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        args.func(args)
    except _REFUSALS as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FrobPDEError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "meta", False):
        stamp = datetime.now(timezone.utc).isoformat()
        print(_dump({"timestamp": stamp, "tool": "frobpde", "version": __version__}), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
