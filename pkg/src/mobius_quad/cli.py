"""Command-line driver: ``mobius-quad {integrate,converge,randomized,approx,lattice}``.

Every run writes a data-only report (CSV or JSON) to stdout or ``--output``.
Exit status is 0 on success, 2 for invalid arguments, 3 for numerical
failures.

CSV columns per command::

    integrate, converge   n,estimate,abs_error
    randomized            n,rmse,replications
    approx                n,lp_error,node_residual
    lattice               n,estimate,abs_error,generating_vector

Study commands append a ``# slope=<value>`` line.
"""

from __future__ import annotations

import argparse
import ast
import io
import json
import math
import operator
import sys
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import baselines, multivariate, quadrature, randomized, trig_approx
from .errors import NonFiniteIntegrandError, NumericalConsistencyError
from .mobius import MobiusMap
from .weights import WeightFunction, gaussian, logistic, reference_abs_power_integral

EXIT_USAGE = 2
EXIT_NUMERICAL = 3

COMMANDS = ("integrate", "converge", "randomized", "approx", "lattice")
METHODS = ("mobius", "gauss-hermite", "se-transform")


class UsageError(ValueError):
    pass


# --- integrand grammar -----------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_FUNCS = {"abs": np.abs, "exp": np.exp, "sqrt": np.sqrt, "log": np.log,
          "sin": np.sin, "cos": np.cos, "tanh": np.tanh}
_CONSTS = {"pi": math.pi, "e": math.e}


def _compile_expression(text: str) -> Callable:
    """Arithmetic in ``x``: numbers, + - * / **, unary minus, and a few functions."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse expression {text!r}: {exc.msg}") from None

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            check(node.operand)
        elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            if len(node.args) != 1 or node.keywords:
                raise UsageError(f"{node.func.id}() takes exactly one argument")
            check(node.args[0])
        elif isinstance(node, ast.Name) and (node.id == "x" or node.id in _CONSTS):
            pass
        elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            pass
        else:
            raise UsageError(f"unsupported element in expression {text!r}: {ast.dump(node)[:40]}")

    check(tree)

    def ev(node, x):
        if isinstance(node, ast.Expression):
            return ev(node.body, x)
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](ev(node.left, x), ev(node.right, x))
        if isinstance(node, ast.UnaryOp):
            return _UNARY[type(node.op)](ev(node.operand, x))
        if isinstance(node, ast.Call):
            return _FUNCS[node.func.id](ev(node.args[0], x))
        if isinstance(node, ast.Name):
            return x if node.id == "x" else _CONSTS[node.id]
        return float(node.value)

    def f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            return np.broadcast_to(np.asarray(ev(tree, x), dtype=float), x.shape).copy()

    return f


@dataclass(frozen=True)
class Integrand:
    spec: str
    f: Callable
    abs_power: Optional[int] = None
    constant: Optional[float] = None


def _number(text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"{what} must be a number, got {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"{what} must be finite, got {text!r}")
    return value


def parse_integrand(spec: str) -> Integrand:
    """``abs-pow:P``, ``constant:V``, ``poly:a0,a1,...``, ``exp:A`` or ``expr:<arithmetic in x>``."""
    name, _, arg = spec.partition(":")
    if name == "abs-pow":
        p = _number(arg, "abs-pow exponent")
        if p < 0:
            raise UsageError("abs-pow exponent must be nonnegative")
        ip = int(p) if p == int(p) else None
        return Integrand(spec, lambda x, p=p: np.abs(x) ** p, abs_power=ip)
    if name == "constant":
        v = _number(arg, "constant value")
        return Integrand(spec, lambda x, v=v: np.full(np.shape(x), v), constant=v)
    if name == "poly":
        coeffs = [_number(t, "polynomial coefficient") for t in arg.split(",") if t.strip()]
        if not coeffs:
            raise UsageError("poly needs at least one coefficient")
        return Integrand(spec, lambda x, c=coeffs[::-1]: np.polyval(c, x))
    if name == "exp":
        a = _number(arg, "exp rate")
        return Integrand(spec, lambda x, a=a: np.exp(a * np.asarray(x, dtype=float)))
    if name == "expr":
        if not arg:
            raise UsageError("expr needs an expression")
        return Integrand(spec, _compile_expression(arg))
    raise UsageError(f"unknown integrand {spec!r}; expected abs-pow:, constant:, poly:, exp: or expr:")


def make_weight(kind: str, param: float) -> WeightFunction:
    return gaussian(param) if kind == "gaussian" else logistic(param)


def auto_reference(integrand: Integrand, weight: WeightFunction, d: int = 1) -> float:
    """Closed-form ``int f rho`` (or its ``d``-fold product) where one is known."""
    if integrand.constant is not None:
        one = integrand.constant
    elif integrand.abs_power is not None and 1 <= integrand.abs_power <= 12:
        # |x|^p is homogeneous, so a scaled weight rescales the unit-scale value.
        one = weight.param ** integrand.abs_power * reference_abs_power_integral(weight.kind, integrand.abs_power)
    else:
        raise UsageError(f"no closed-form reference for integrand {integrand.spec!r}; pass --reference <value>")
    return one**d


# --- argument handling -----------------------------------------------------

def _ladder(text: str) -> List[int]:
    """``lo:hi`` (powers of two from lo to hi) or a comma list."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":"))
            if lo < 1 or hi < lo:
                raise ValueError
            ns = []
            n = lo
            while n <= hi:
                ns.append(n)
                n *= 2
        else:
            ns = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid n ladder {text!r}; use LO:HI or a comma list") from None
    if not ns or any(n < 1 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
        raise argparse.ArgumentTypeError(f"n ladder {text!r} must be positive and strictly increasing")
    return ns


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mobius-quad", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--integrand", default="abs-pow:1")
    common.add_argument("--weight", choices=("gaussian", "logistic"), default="gaussian")
    common.add_argument("--weight-param", type=_positive_float, default=1.0)
    common.add_argument("--reference", default="auto", help="'auto' or a number")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="report path (default stdout)")

    one_d = argparse.ArgumentParser(add_help=False)
    one_d.add_argument("--c", type=_positive_float, default=1.0)

    p = sub.add_parser("integrate", parents=[common, one_d], help="single estimate")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--method", choices=METHODS, default="mobius")
    p.add_argument("--shift", type=float, default=0.0, help="grid offset in radians, in [0, 2pi/n)")

    p = sub.add_parser("converge", parents=[common, one_d], help="error ladder and fitted rate")
    p.add_argument("--n-ladder", type=_ladder, default=list(quadrature.DEFAULT_LADDER))
    p.add_argument("--method", choices=METHODS, default="mobius")
    p.add_argument("--shift", type=float, default=0.0)

    p = sub.add_parser("randomized", parents=[common, one_d], help="RMSE of the randomized rule")
    p.add_argument("--n-ladder", type=_ladder, default=[2**k for k in range(3, 11)])
    p.add_argument("--replications", type=int, default=randomized.DEFAULT_REPLICATIONS)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("approx", parents=[common, one_d], help="L^p_rho approximation errors")
    p.add_argument("--n-ladder", type=_ladder, default=[2**k for k in range(4, 11)])
    p.add_argument("--p", type=float, default=1.0, dest="p_exp", help="target error exponent")
    p.add_argument("--n-ref", type=_positive_int, default=None)
    p.add_argument("--export-interpolant", default=None, help="write the largest-n interpolant as JSON")

    p = sub.add_parser("lattice", parents=[common], help="d-dimensional lattice rule")
    p.add_argument("--dim", type=_positive_int, default=2)
    p.add_argument("--lattice", choices=("korobov",), default="korobov")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n", type=_positive_int, default=None)
    group.add_argument("--n-ladder", type=_ladder, default=None)
    p.add_argument("--c", type=_positive_float, nargs="+", default=[1.0])
    p.add_argument("--alpha", type=_positive_int, default=2)
    return parser


@dataclass
class StudySpec:
    command: str
    integrand: Integrand
    weight: WeightFunction
    reference: Optional[float]
    output_format: str
    output: Optional[str]
    c: List[float] = field(default_factory=lambda: [1.0])
    method: str = "mobius"
    ns: List[int] = field(default_factory=list)
    shift: float = 0.0
    seed: int = 0
    replications: int = randomized.DEFAULT_REPLICATIONS
    p: float = 1.0
    n_ref: Optional[int] = None
    export_interpolant: Optional[str] = None
    dim: int = 1
    alpha: int = 2


def spec_from_args(args: argparse.Namespace) -> StudySpec:
    """Validate everything up front; raises :class:`UsageError`."""
    integrand = parse_integrand(args.integrand)
    weight = make_weight(args.weight, args.weight_param)
    cmd = args.command
    spec = StudySpec(cmd, integrand, weight, None, args.format, args.output)
    spec.c = list(args.c) if isinstance(args.c, list) else [args.c]
    if cmd in ("integrate", "converge"):
        spec.method = args.method
        spec.shift = args.shift
        spec.ns = [args.n] if cmd == "integrate" else args.n_ladder
        if spec.method == "gauss-hermite" and args.weight != "gaussian":
            raise UsageError("gauss-hermite requires --weight gaussian")
        if spec.method == "gauss-hermite" and spec.ns[-1] > baselines.MAX_GAUSS_HERMITE_NODES:
            raise UsageError(f"gauss-hermite supports n <= {baselines.MAX_GAUSS_HERMITE_NODES}")
        if not 0.0 <= spec.shift < 2 * math.pi / spec.ns[-1]:
            raise UsageError("--shift must lie in [0, 2*pi/n) for every n used")
    elif cmd == "randomized":
        spec.ns, spec.seed, spec.replications = args.n_ladder, args.seed, args.replications
        if spec.replications < 2:
            raise UsageError("--replications must be at least 2")
        if spec.ns[0] < 2:
            raise UsageError("randomized rule needs n >= 2")
    elif cmd == "approx":
        spec.ns, spec.p, spec.n_ref = args.n_ladder, args.p_exp, args.n_ref
        spec.export_interpolant = args.export_interpolant
        if not spec.p >= 1:
            raise UsageError("--p must be >= 1")
        if spec.ns[0] < 2:
            raise UsageError("approx needs n >= 2")
        if spec.n_ref is not None and spec.n_ref < 8 * spec.ns[-1]:
            raise UsageError("--n-ref must be at least 8 times the largest n")
    elif cmd == "lattice":
        spec.dim, spec.alpha = args.dim, args.alpha
        spec.ns = [args.n] if args.n is not None else (args.n_ladder or [2**12])
        if len(spec.c) == 1:
            spec.c = spec.c * spec.dim
        if len(spec.c) != spec.dim:
            raise UsageError(f"--c needs 1 or {spec.dim} values")
        if spec.ns[0] < 2:
            raise UsageError("lattice needs n >= 2")
    if cmd == "approx":
        spec.reference = None
    elif args.reference == "auto":
        if cmd == "integrate":
            try:
                spec.reference = auto_reference(integrand, weight)
            except UsageError:
                spec.reference = None
        else:
            spec.reference = auto_reference(integrand, weight, spec.dim if cmd == "lattice" else 1)
    else:
        spec.reference = _number(args.reference, "--reference")
    return spec


# --- execution -------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def _write_csv(header: Sequence[str], rows, slope=None, slope_row=False) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    if slope_row:
        buf.write(f"# slope={_fmt(slope)}\n")
    return buf.getvalue()


def _estimate_1d(spec: StudySpec, n: int) -> float:
    f = spec.integrand.f
    if spec.method == "gauss-hermite":
        return baselines.gauss_hermite_integrate(f, n, sigma=spec.weight.param)
    if spec.method == "se-transform":
        return baselines.se_transform_integrate(f, spec.weight, n, spec.shift)
    ti = quadrature.TransformedIntegrand(f, spec.weight, MobiusMap(spec.c[0]))
    return quadrature.integrate(ti, n, spec.shift)


def _slope_or_none(slope: float) -> Optional[float]:
    return None if math.isnan(slope) else slope


def execute(spec: StudySpec) -> str:
    """Run a validated study and return the report text."""
    cmd = spec.command
    f = spec.integrand.f
    if cmd == "integrate" or (cmd == "converge" and spec.method != "mobius"):
        rows = []
        for n in spec.ns:
            q = _estimate_1d(spec, n)
            err = abs(q - spec.reference) if spec.reference is not None else None
            rows.append((n, q, err))
        slope = None
        if cmd == "converge":
            slope, window = quadrature.fit_loglog_slope([r[0] for r in rows], [r[2] for r in rows])
        if spec.output_format == "json":
            payload = {"entries": [{"n": n, "estimate": q, "abs_error": e} for n, q, e in rows],
                       "reference": spec.reference, "method": spec.method}
            if cmd == "converge":
                payload.update(fitted_slope=_slope_or_none(slope), fit_window=list(window) if window else None,
                               error_floor=quadrature.DEFAULT_ERROR_FLOOR)
            return json.dumps(payload, indent=2) + "\n"
        return _write_csv(("n", "estimate", "abs_error"), rows, slope, slope_row=cmd == "converge")

    if cmd == "converge":
        ti = quadrature.TransformedIntegrand(f, spec.weight, MobiusMap(spec.c[0]))
        report = quadrature.convergence_study(ti, spec.ns, spec.reference, shift=spec.shift)
        if spec.output_format == "json":
            payload = report.to_dict()
            payload["method"] = spec.method
            return json.dumps(payload, indent=2) + "\n"
        rows = [(e.n, e.estimate, e.abs_error) for e in report.entries]
        return _write_csv(("n", "estimate", "abs_error"), rows, report.fitted_slope, slope_row=True)

    if cmd == "randomized":
        ti = quadrature.TransformedIntegrand(f, spec.weight, MobiusMap(spec.c[0]))
        report = randomized.rmse_study(ti, spec.ns, spec.replications, spec.reference, spec.seed)
        if spec.output_format == "json":
            payload = report.to_dict()
            payload["seed"] = spec.seed
            return json.dumps(payload, indent=2) + "\n"
        rows = [(e.n, e.rmse, e.replications) for e in report.entries]
        return _write_csv(("n", "rmse", "replications"), rows, report.fitted_slope, slope_row=True)

    if cmd == "approx":
        mobius = MobiusMap(spec.c[0])
        rows = []
        interp = None
        for n in spec.ns:
            interp = trig_approx.build_interpolant(f, spec.weight, mobius, n, spec.p)
            n_ref = spec.n_ref if spec.n_ref is not None else max(8 * n, 4096)
            rows.append((n, trig_approx.lp_error(f, interp, n_ref=n_ref), interp.node_residual()))
        slope, window = quadrature.fit_loglog_slope([r[0] for r in rows], [r[1] for r in rows])
        if spec.export_interpolant:
            with open(spec.export_interpolant, "w") as fh:
                fh.write(interp.to_json() + "\n")
        if spec.output_format == "json":
            payload = {"entries": [{"n": n, "lp_error": e, "node_residual": r} for n, e, r in rows],
                       "p": spec.p, "fitted_slope": _slope_or_none(slope),
                       "fit_window": list(window) if window else None}
            return json.dumps(payload, indent=2) + "\n"
        return _write_csv(("n", "lp_error", "node_residual"), rows, slope, slope_row=True)

    # lattice: the 1-D integrand is applied to every coordinate and multiplied
    weights = multivariate.ProductWeight([spec.weight] * spec.dim)
    maps = [MobiusMap(c) for c in spec.c]

    def fd(x):
        out = np.ones(x.shape[0])
        for k in range(x.shape[1]):
            out = out * f(x[:, k])
        return out

    rows = []
    for n in spec.ns:
        rule = multivariate.korobov_search(n, spec.dim, spec.alpha)
        q = multivariate.integrate_lattice(fd, weights, maps, rule)
        rows.append((n, q, abs(q - spec.reference), rule.z))
    slope, window = quadrature.fit_loglog_slope([r[0] for r in rows], [r[2] for r in rows])
    if spec.output_format == "json":
        payload = {"entries": [{"n": n, "estimate": q, "abs_error": e, "generating_vector": list(z)}
                               for n, q, e, z in rows],
                   "reference": spec.reference, "dim": spec.dim, "c": spec.c,
                   "fitted_slope": _slope_or_none(slope)}
        return json.dumps(payload, indent=2) + "\n"
    csv_rows = [(n, q, e, " ".join(str(v) for v in z)) for n, q, e, z in rows]
    return _write_csv(("n", "estimate", "abs_error", "generating_vector"), csv_rows, slope,
                      slope_row=len(rows) > 1)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        spec = spec_from_args(args)
    except (UsageError, ValueError) as exc:
        print(f"mobius-quad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with np.errstate(over="ignore", under="ignore"):
            text = execute(spec)
    except (NonFiniteIntegrandError, NumericalConsistencyError, FloatingPointError, ArithmeticError) as exc:
        print(f"mobius-quad: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"mobius-quad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if spec.output:
        with open(spec.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
