"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 I/O failure.
"""

import argparse
import ast
from dataclasses import dataclass
import json
import math
import operator
import re
import sys

from capmap import capacity, halfdisk, sc_exterior
from capmap.errors import DomainError, NumericalError
from capmap.geometry import Triangle

SCHEMA = "capmap/1"
EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
CSV_COLUMNS = ("object_type", "object_index", "t", "re", "im")


class UsageError(DomainError):
    pass


@dataclass(frozen=True)
class RunConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    radius: float = 0.5
    nodes: int = 512
    fmt: str = "text"
    out: str = None

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise UsageError("tolerance must be positive")
        if not 0.05 < self.radius < 1:
            raise UsageError("contour radius must lie in (0.05, 1)")
        if self.nodes < 64 or self.nodes & (self.nodes - 1):
            raise UsageError("node count must be a power of two >= 64")


# ---------------------------------------------------------------- parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": math.pi, "e": math.e, "i": 1j, "j": 1j}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1):
        return math.sqrt(_eval_node(node.args[0]))
    raise ValueError("unsupported expression")


def parse_number(text, allow_complex=False):
    """Parse ``2``, ``sqrt3``, ``sqrt(35)``, ``-13/3+4*sqrt(35)/3*i`` and the like."""
    expr = re.sub(r"sqrt(\d+(?:\.\d+)?)", r"sqrt(\1)", text.strip())
    expr = re.sub(r"(\d)([ij])\b", r"\1*\2", expr)
    try:
        value = _eval_node(ast.parse(expr, mode="eval"))
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}") from exc
    if isinstance(value, complex) and not allow_complex:
        if value.imag != 0:
            raise argparse.ArgumentTypeError(f"{text!r} is not real")
        value = value.real
    return complex(value) if allow_complex else float(value)


def _real(text):
    return parse_number(text)


def _point(text):
    return parse_number(text, allow_complex=True)


# ---------------------------------------------------------------- output


def _num(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return _num(obj)
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return obj


def _fmt_text(value):
    if isinstance(value, complex):
        sign = "+" if value.imag >= 0 else "-"
        return f"{value.real!r} {sign} {abs(value.imag)!r}i"
    if isinstance(value, (list, tuple)):
        return ", ".join(_fmt_text(v) for v in value)
    if isinstance(value, dict):
        return "; ".join(f"{k}={_fmt_text(v)}" for k, v in value.items())
    return repr(value) if isinstance(value, float) else str(value)


def _emit(report, run, stream):
    if run.fmt == "json":
        json.dump(_jsonable({"schema": SCHEMA, **report}), stream, indent=2)
        stream.write("\n")
    elif run.fmt == "csv":
        stream.write("key,value\n")
        for key, value in report.items():
            stream.write(f"{key},\"{_fmt_text(value)}\"\n")
    else:
        for key, value in report.items():
            stream.write(f"{key}: {_fmt_text(value)}\n")


def _open_out(run):
    if run.out is None or run.out == "-":
        return sys.stdout, False
    return open(run.out, "w", encoding="utf-8", newline=""), True


def _write(report, run):
    stream, close = _open_out(run)
    try:
        _emit(report, run, stream)
    finally:
        if close:
            stream.close()


# ---------------------------------------------------------------- triangles


def _apex(args):
    theta = args.apex
    if args.degrees:
        theta = math.radians(theta)
    if not 0 < theta < math.pi:
        raise UsageError(f"apex angle must lie in (0, pi), got {theta}")
    return theta


def _triangle(args):
    if getattr(args, "vertices", None):
        tri = Triangle.from_vertices(args.vertices)
        if args.sides:  # both given: they must describe the same triangle
            Triangle(args.sides, tri.vertices)
        return tri
    return Triangle.from_sides(*args.sides)


def _ccw(tri):
    if tri.is_counterclockwise():
        return tri
    v0, v1, v2 = tri.vertices
    return Triangle.from_vertices((v0, v2, v1))


def _map_for(args, run):
    """(map spec, description) for whichever triangle selector was given."""
    if getattr(args, "unit_legs_right", False):
        return sc_exterior.make_unit_legs_right_map(), {"unit_legs_right": True}
    if args.apex is not None:
        theta = _apex(args)
        return sc_exterior.make_isosceles_map(theta), {"apex": theta}
    tri = _ccw(_triangle(args))
    return sc_exterior.make_general_map(tri), {"sides": list(tri.sides),
                                               "vertices": list(tri.vertices)}


def _laurent(spec, run):
    return sc_exterior.laurent_summary(spec, r=run.radius, n=64, tol=run.abs_tol,
                                       max_doublings=max(1, int(math.log2(run.nodes)) - 5))


# ---------------------------------------------------------------- commands


def cmd_capacity(args, run):
    if args.apex is not None:
        theta = _apex(args)
        tri = Triangle.isosceles(theta)
        report = {"command": "capacity", "apex": theta}
    else:
        tri = _triangle(args)
        report = {"command": "capacity", "sides": list(tri.sides)}
    result = capacity.haegi_capacity(tri)
    report.update(kappa=result.kappa, method=result.method)
    if args.verify_sc:
        if args.apex is not None:
            spec = sc_exterior.make_isosceles_map(theta)
        else:
            spec = sc_exterior.make_general_map(_ccw(tri if tri.vertices else
                                                     Triangle.from_sides(*tri.sides)))
        lau = _laurent(spec, run)
        report.update(kappa_sc=lau.kappa, kappa_difference=lau.kappa - result.kappa,
                      laurent_error=lau.error)
    _write(report, run)


def cmd_center(args, run):
    if args.closed_form and (args.apex is None or abs(_apex(args) - math.pi / 2) > 1e-3):
        raise UsageError("--closed-form is available only for --apex pi/2")
    spec, desc = _map_for(args, run)
    lau = _laurent(spec, run)
    report = {"command": "center", **desc, "center": lau.center, "kappa": lau.kappa,
              "error": lau.error, "radius": lau.radius_used, "nodes": lau.node_count}
    if args.closed_form:
        report["lambda_closed_form"] = sc_exterior.closed_form_lambda_right_isosceles().real
    if args.unit_legs_right:
        report["center_closed_form"] = sc_exterior.outer_center_unit_legs_right_triangle()
    _write(report, run)


def cmd_halfdisk(args, run):
    report = {"command": "halfdisk"}
    both = not (args.inner or args.outer)
    if args.inner or both:
        inner = halfdisk.inner_center()
        report.update(y0=inner.y0, max_inner_radius=inner.max_inner_radius,
                      h_at_y0=inner.h_at_y0)
    if args.outer or both:
        outer = halfdisk.outer_summary_halfdisk(r=run.radius)
        report.update(outer_radius=outer.outer_radius, outer_center=outer.outer_center)
    _write(report, run)


def cmd_optimize(args, run):
    theta, kappa = capacity.maximize_isosceles_capacity()
    _write({"command": "optimize-kappa", "theta_star": theta, "kappa_star": kappa,
            "kappa_star_source": "derived"}, run)


def grid_records(grid):
    for k, img in enumerate(grid.circles):
        for t, w in zip(grid.circle_t, img):
            yield ("circle", k, float(t), float(w.real), float(w.imag))
    for k, img in enumerate(grid.rays):
        for t, w in zip(grid.ray_radii, img):
            yield ("ray", k, float(t), float(w.real), float(w.imag))


def cmd_grid(args, run):
    if args.circles < 1:
        raise UsageError("--circles must be at least 1")
    if args.rays < 0:
        raise UsageError("--rays must be non-negative")
    if args.samples < 64:
        raise UsageError("--samples must be at least 64")
    spec, desc = _map_for(args, run)
    lau = _laurent(spec, run)
    grid = sc_exterior.map_grid(spec, args.circles, args.rays, args.samples)
    meta = {"schema": SCHEMA, "triangle": desc,
            "target_vertices": list(spec.target_vertices), "kappa": lau.kappa,
            "center": lau.center, "radii": list(grid.radii),
            "ray_angles": list(grid.ray_angles)}
    stream, close = _open_out(run)
    try:
        if run.fmt == "json":
            json.dump(_jsonable({**meta, "columns": list(CSV_COLUMNS),
                                 "records": [list(r) for r in grid_records(grid)]}), stream)
            stream.write("\n")
        else:
            stream.write("# " + json.dumps(_jsonable(meta)) + "\n")
            stream.write(",".join(CSV_COLUMNS) + "\n")
            for rec in grid_records(grid):
                stream.write(f"{rec[0]},{rec[1]},{rec[2]!r},{rec[3]!r},{rec[4]!r}\n")
    finally:
        if close:
            stream.close()


def cmd_prevertices(args, run):
    if args.apex is not None:
        theta = _apex(args)
        tri = Triangle.isosceles(theta)
    else:
        tri = _ccw(_triangle(args))
    mu = sc_exterior.exponents_from_triangle(tri)
    fixed = args.fixed if args.fixed is not None else (-1.0 if args.apex is not None else 1.0)
    pv = sc_exterior.solve_prevertices(mu, fixed, mirror=args.mirror)
    _write({"command": "prevertices", "vertices": list(tri.vertices), "mu": list(mu),
            "interior_over_pi": [1.0 - m for m in mu], "prevertices": list(pv),
            "residue": sc_exterior.residue(pv, mu)}, run)


# ---------------------------------------------------------------- parser


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                   help="absolute/relative tolerance for convergence checks")
    p.add_argument("--radius", type=float, default=argparse.SUPPRESS,
                   help="contour radius for Laurent extraction (default 0.5)")
    p.add_argument("--nodes", type=int, default=argparse.SUPPRESS,
                   help="maximum trapezoid node count, a power of two (default 512)")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="shorthand for --format json")
    p.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    p.add_argument("--degrees", action="store_true", default=argparse.SUPPRESS,
                   help="read --apex in degrees")
    return p


def _add_selector(p, unit_legs=True, vertices=True, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--sides", nargs=3, type=_real, metavar=("A", "B", "C"))
    g.add_argument("--apex", type=_real, metavar="THETA")
    if unit_legs:
        g.add_argument("--unit-legs-right", action="store_true",
                       help="the triangle with vertices 0, 1, i")
    if vertices:
        p.add_argument("--vertices", nargs=3, type=_point, metavar=("V1", "V2", "V3"))


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(
        prog="capmap", parents=[common],
        description="Exterior conformal maps, capacities and outer centers of triangles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", parents=[common], help="logarithmic capacity")
    _add_selector(p, unit_legs=False, vertices=False)
    p.add_argument("--verify-sc", action="store_true",
                   help="also compute kappa from the Schwarz-Christoffel map")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("center", parents=[common], help="outer conformal center")
    _add_selector(p, required=False)
    p.add_argument("--closed-form", action="store_true",
                   help="also print the Appell F1 expression (apex pi/2 only)")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("halfdisk", parents=[common], help="half-disk constants")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--inner", action="store_true")
    g.add_argument("--outer", action="store_true")
    p.set_defaults(func=cmd_halfdisk)

    p = sub.add_parser("optimize-kappa", parents=[common],
                       help="apex angle of maximal isosceles capacity")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("map-grid", parents=[common], help="images of circles and rays")
    _add_selector(p, required=False)
    p.add_argument("--circles", type=int, default=10)
    p.add_argument("--rays", type=int, default=24)
    p.add_argument("--samples", type=int, default=512)
    p.set_defaults(func=cmd_grid, grid_format="csv")

    p = sub.add_parser("prevertices", parents=[common], help="exponents and prevertices")
    _add_selector(p, unit_legs=False, required=False)
    p.add_argument("--fixed", type=_point, default=None, help="prevertex a1 (default 1, or -1 for --apex)")
    p.add_argument("--mirror", action="store_true", help="return the mirror-image solution")
    p.set_defaults(func=cmd_prevertices)
    return parser


def _run_config(args):
    fmt = getattr(args, "format", None)
    if getattr(args, "json", False):
        fmt = "json"
    if fmt is None:
        fmt = "csv" if args.command == "map-grid" else "text"
    tol = getattr(args, "tol", 1e-10)
    return RunConfig(abs_tol=tol, rel_tol=tol, radius=getattr(args, "radius", 0.5),
                     nodes=getattr(args, "nodes", 512), fmt=fmt,
                     out=getattr(args, "out", None))


_NEGATIVE_EXPR = re.compile(r"-(?:[\d.(]|sqrt|pi\b|[ij]\b)")


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    # argparse would read "-13/3+..." as an option; a leading space keeps it a value
    argv = [" " + a if _NEGATIVE_EXPR.match(a) else a for a in argv]
    args = parser.parse_args(argv)
    args.degrees = getattr(args, "degrees", False)
    if args.command in ("center", "map-grid", "prevertices"):
        if not (args.apex is not None or args.sides or args.vertices
                or getattr(args, "unit_legs_right", False)):
            parser.error(f"{args.command} needs --apex, --sides, --vertices or --unit-legs-right")
    try:
        run = _run_config(args)
        args.func(args, run)
    except DomainError as exc:
        print(f"capmap: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, ArithmeticError) as exc:
        print(f"capmap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"capmap: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
