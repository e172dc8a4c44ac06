"""Command-line interface.

One executable, subcommand style, flags only (no environment
configuration), machine-readable output.  Floats are serialized with 17
significant digits so every report is byte-stable for a fixed argv and
round-trips through standard JSON parsers.

Exit codes: 0 success, 1 at least one failed check, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from sphharm import basis as basis_mod
from sphharm import checks, kernels, quadrature, zonalsys
from sphharm.exactpoly import MultiPoly
from sphharm.orthopoly import coefficient_table


class UsageError(Exception):
    """Bad flags or malformed input files; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: subcommand plus the shared knobs."""

    subcommand: str
    d: int = 3
    n: int = 0
    nmax: int = 0
    seed: int = 0
    format: str = "json"
    tolerances: dict | None = None
    output: str | None = None


# ----------------------------------------------------------------------
# canonical serialization
# ----------------------------------------------------------------------
def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _to_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_to_json(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq)
        if flat:
            return "[" + ", ".join(_to_json(v, indent + 1) for v in seq) + "]"
        inner = ",\n".join(f"{pad}  {_to_json(v, indent + 1)}" for v in seq)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    return json.dumps(obj)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [_fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
        )
    return buf.getvalue()


def _load_poly(path: str) -> MultiPoly:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read polynomial file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"polynomial file {path} is not valid JSON: {exc}") from exc
    try:
        return MultiPoly.from_json_dict(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_point(text: str, d: int) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc
    if len(values) != d:
        raise UsageError(f"point {text!r} has {len(values)} coordinates, expected {d}")
    return values


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------
def _cmd_dim(args) -> int:
    value = basis_mod.dim_harmonic(args.n, args.d)
    if args.format == "csv":
        _emit(_rows_to_csv(["d", "n", "dim"], [[args.d, args.n, value]]), args.output)
    else:
        _emit(_to_json({"d": args.d, "n": args.n, "dim": value}), args.output)
    return 0


def _basis_payload(args):
    kind = args.kind
    if kind == "maxwell":
        bas = basis_mod.maxwell_basis(args.n, args.d)
    elif kind == "sphcoord":
        bas = basis_mod.sph_coord_basis(args.n, args.d)
    elif kind == "d2":
        if args.d != 2:
            raise UsageError("--kind d2 requires --d 2")
        bas = basis_mod.basis_d2(args.n)
    elif kind == "d3":
        if args.d != 3:
            raise UsageError("--kind d3 requires --d 3")
        bas = basis_mod.basis_d3(args.n)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown basis kind {kind}")
    return bas


def _cmd_basis(args) -> int:
    bas = _basis_payload(args)
    elements = []
    for alpha, el in zip(bas.indexing, bas.elements):
        entry: dict = {"alpha": list(alpha)}
        if isinstance(el, MultiPoly):
            entry["polynomial"] = el.to_json_dict()
        else:
            entry["normalizer_sq"] = el.norm_factor_sq
            entry["normalizer"] = el.normalizer
        elements.append(entry)
    payload = {
        "d": bas.dimension,
        "n": bas.degree,
        "kind": args.kind,
        "orthonormal": bas.orthonormal,
        "count": len(bas),
        "elements": elements,
    }
    if args.format == "coeffs":
        lines = []
        for alpha, el in zip(bas.indexing, bas.elements):
            if not isinstance(el, MultiPoly):
                raise UsageError(f"--format coeffs needs polynomial elements, not {args.kind}")
            lines.append(
                json.dumps(
                    {
                        "alpha": list(alpha),
                        "terms": [
                            {"alpha": list(a), "num": str(c.numerator), "den": str(c.denominator)}
                            for a, c in el.items()
                        ],
                    },
                    sort_keys=True,
                )
            )
        _emit("\n".join(lines), args.output)
    elif args.format == "csv":
        rows = []
        for alpha, el in zip(bas.indexing, bas.elements):
            if isinstance(el, MultiPoly):
                for a, c in el.items():
                    rows.append([",".join(map(str, alpha)), ",".join(map(str, a)), str(c.numerator), str(c.denominator)])
            else:
                rows.append([",".join(map(str, alpha)), "", str(el.norm_factor_sq.numerator), str(el.norm_factor_sq.denominator)])
        _emit(_rows_to_csv(["element", "term", "num", "den"], rows), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0


def _cmd_eval(args) -> int:
    poly = _load_poly(args.poly)
    if args.rational:
        try:
            point = [Fraction(v) for v in args.rational.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational point {args.rational!r}: {exc}") from exc
        if len(point) != poly.dimension:
            raise UsageError(
                f"point has {len(point)} coordinates, expected {poly.dimension}"
            )
        value = poly.eval_rational(point)
        payload = {"value": str(value), "exact": True}
    else:
        if not args.point:
            raise UsageError("supply --point or --rational")
        point = _parse_point(args.point, poly.dimension)
        payload = {"value": poly.eval_float(point), "exact": False}
    if args.format == "csv":
        _emit(_rows_to_csv(["value"], [[payload["value"]]]), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0


def _cmd_zonal(args) -> int:
    if args.profile_table:
        if args.d >= 3:
            lam = Fraction(args.d - 2, 2)
            text = coefficient_table("gegenbauer", args.nmax, lam)
        else:
            text = coefficient_table("chebyshev-t", args.nmax)
        _emit(text, args.output)
        return 0
    if args.t is None:
        raise UsageError("supply --t (or --profile-table)")
    value = kernels.zonal_eval(args.n, args.d, args.t)
    payload = {"d": args.d, "n": args.n, "t": args.t, "value": value}
    if args.format == "csv":
        _emit(_rows_to_csv(["d", "n", "t", "value"], [[args.d, args.n, args.t, value]]), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0


def _cmd_quad(args) -> int:
    rule = quadrature.sphere_product_rule(args.d, args.degree)
    if args.format == "csv":
        header = [f"x{i + 1}" for i in range(args.d)] + ["weight"]
        rows = [list(p) + [w] for p, w in zip(rule.points, rule.weights)]
        _emit(_rows_to_csv(header, rows), args.output)
    else:
        payload = {
            "d": rule.dimension,
            "exact_degree": rule.exact_degree,
            "points": [list(p) for p in rule.points],
            "weights": list(rule.weights),
        }
        _emit(_to_json(payload), args.output)
    return 0


def _cmd_project(args) -> int:
    poly = _load_poly(args.poly)
    if not poly.is_homogeneous():
        raise UsageError("projection needs a homogeneous input polynomial")
    projected = kernels.project_homogeneous(poly)
    _emit(_to_json(projected.to_json_dict()), args.output)
    return 0


def _cmd_funk_hecke(args) -> int:
    if args.coeffs:
        try:
            coeffs = [Fraction(c) for c in args.coeffs.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad coefficient list {args.coeffs!r}: {exc}") from exc
    elif args.poly:
        try:
            with open(args.poly) as fh:
                data = json.load(fh)
            coeffs = [Fraction(str(c)) for c in data["coefficients"]]
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
            raise UsageError(f"bad profile file {args.poly}: {exc}") from exc
    else:
        raise UsageError("supply --coeffs or --poly")
    degree = max(len(coeffs) - 1, 0)

    def profile(t: float) -> float:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * t + float(c)
        return acc

    value = kernels.funk_hecke(profile, args.n, args.d, m=args.m, poly_degree=degree)
    payload = {"d": args.d, "n": args.n, "lambda_n": value}
    if args.format == "csv":
        _emit(_rows_to_csv(["d", "n", "lambda_n"], [[args.d, args.n, value]]), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0


def _cmd_fundsys(args) -> int:
    system = zonalsys.greedy_fundamental_system(
        args.n, args.d, seed=args.seed, candidates_per_step=args.candidates
    )
    payload = {
        "d": system.dimension,
        "n": system.degree,
        "seed": args.seed,
        "size": system.size,
        "points": [list(p) for p in system.points],
        "gram_determinant": float(np.linalg.det(system.gram)),
        "min_eigenvalue": system.min_eigenvalue,
        "condition": system.condition,
    }
    if args.format == "csv":
        header = [f"x{i + 1}" for i in range(args.d)]
        _emit(_rows_to_csv(header, [list(p) for p in system.points]), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0


def _cmd_interp(args) -> int:
    try:
        with open(args.values) as fh:
            values = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read values file {args.values}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"values file {args.values} is not valid JSON: {exc}") from exc
    if not isinstance(values, list):
        raise UsageError("values file must hold a JSON list of numbers")
    system = zonalsys.greedy_fundamental_system(args.n, args.d, seed=args.seed)
    if len(values) != system.size:
        raise UsageError(f"expected {system.size} values for n={args.n}, d={args.d}, got {len(values)}")
    interp = zonalsys.interpolate(system, [float(v) for v in values])
    samples = checks.random_unit_points(args.seed + 1, args.num_samples, args.d)
    payload = {
        "d": args.d,
        "n": args.n,
        "seed": args.seed,
        "nodes": [list(p) for p in system.points],
        "coefficients": list(interp.coeffs),
        "samples": [
            {"point": list(p), "value": float(v)}
            for p, v in zip(samples, interp.eval_many(samples))
        ],
    }
    if args.format == "csv":
        rows = [list(p) + [v] for p, v in zip(samples, interp.eval_many(samples))]
        header = [f"x{i + 1}" for i in range(args.d)] + ["value"]
        _emit(_rows_to_csv(header, rows), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0


def _parse_tolerances(pairs: list[str] | None) -> dict | None:
    if not pairs:
        return None
    out = {}
    for pair in pairs:
        name, _, value = pair.partition("=")
        if not value:
            raise UsageError(f"tolerance override {pair!r} must look like name=value")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance value in {pair!r}: {exc}") from exc
    return out


def _cmd_check(args) -> int:
    try:
        report = checks.run_checks(
            args.d, args.nmax, seed=args.seed, tolerances=_parse_tolerances(args.tol)
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "d": args.d,
        "nmax": args.nmax,
        "seed": args.seed,
        "checks": report,
    }
    if args.format == "csv":
        rows = [[e["check"], e["status"], e["max_residual"], e["witness"] or ""] for e in report]
        _emit(_rows_to_csv(["check", "status", "max_residual", "witness"], rows), args.output)
    else:
        _emit(_to_json(payload), args.output)
    return 0 if all(e["status"] == "pass" for e in report) else 1


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------
def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphharm",
        description="Spherical harmonics: bases, kernels, operators and their verification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, n_flag=True, seed=False, formats=("json", "csv")):
        p.add_argument("--d", type=int, default=3, help="ambient dimension (sphere S^{d-1})")
        if n_flag:
            p.add_argument("--n", type=int, default=0, help="harmonic degree")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--output", help="write to a file instead of stdout")

    p = sub.add_parser("dim", help="dimension of the degree-n harmonics")
    common(p)
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("basis", help="emit a basis of the degree-n harmonics")
    common(p, formats=("json", "csv", "coeffs"))
    p.add_argument("--kind", choices=("maxwell", "sphcoord", "d2", "d3"), default="maxwell")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("eval", help="evaluate a polynomial JSON file at a point")
    p.add_argument("--poly", required=True, help="polynomial JSON file")
    p.add_argument("--point", help="comma-separated float coordinates")
    p.add_argument("--rational", help="comma-separated rational coordinates (exact path)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("zonal", help="evaluate the zonal kernel profile")
    common(p)
    p.add_argument("--t", type=float, help="inner product in [-1, 1]")
    p.add_argument("--profile-table", action="store_true", help="emit exact profile coefficients as JSON lines")
    p.add_argument("--nmax", type=int, default=8, help="table degree cap for --profile-table")
    p.set_defaults(func=_cmd_zonal)

    p = sub.add_parser("quad", help="product quadrature rule on the sphere")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--degree", type=int, required=True, help="polynomial exactness degree")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_quad)

    p = sub.add_parser("project", help="harmonic projection of a homogeneous polynomial")
    p.add_argument("--poly", required=True, help="polynomial JSON file")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("funk-hecke", help="Funk-Hecke multiplier of a profile polynomial")
    common(p)
    p.add_argument("--coeffs", help="ascending profile coefficients, e.g. '0,1'")
    p.add_argument("--poly", help="JSON file with a 'coefficients' list")
    p.add_argument("--m", type=int, help="Gauss node count (defaults from the profile degree)")
    p.set_defaults(func=_cmd_funk_hecke)

    p = sub.add_parser("fundsys", help="greedy fundamental system with Gram diagnostics")
    common(p, seed=True)
    p.add_argument("--candidates", type=int, default=32, help="candidate draws per point")
    p.set_defaults(func=_cmd_fundsys)

    p = sub.add_parser("interp", help="zonal interpolation from node values")
    common(p, seed=True)
    p.add_argument("--values", required=True, help="JSON file with the node values")
    p.add_argument("--num-samples", type=int, default=10, help="random sample points to report")
    p.set_defaults(func=_cmd_interp)

    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", action="append", help="override a tolerance, e.g. --tol addition-formula=1e-7")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_check)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Entry point returning the exit status (0 ok, 1 failed check, 2 usage)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
