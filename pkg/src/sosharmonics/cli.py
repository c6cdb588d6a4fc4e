"""Command-line front end.

Subcommands:
  eval    point record (W, region, metrics, generalized trig, optional V)
  grid    meridional-quadrant CSV of s, V, hR or W
  verify  identity suites; exit 1 on any failed check
  fit     least-squares boundary fit producing a coefficient file

The system config {"mu": ..., "R0": ...} always comes from a JSON file; a
coefficient file in the documented JSON format supplies the potential.
Exit codes: 0 ok, 1 verification failure, 2 usage/parse, 3 domain/numeric.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

from . import verify as verify_mod
from .coords import (
    CartesianPoint,
    SosPoint,
    SystemConfig,
    cartesian_to_sos,
    compute_W,
    metrics_at,
)
from .errors import SosError
from .harmonic import (
    HarmonicSolution,
    eval_V,
    fit_boundary,
    load_solution,
    s_at_point,
    solution_to_dict,
)
from .series import region_of
from .trig import s_limit, trig_auto

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_HALF_PI = math.pi / 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Meridional-plane grid in units of R0, quadrant x >= 0, z >= 0."""

    x_min: float
    x_max: float
    z_min: float
    z_max: float
    nx: int
    nz: int

    def __post_init__(self) -> None:
        if not (self.x_max > self.x_min >= 0.0):
            raise ValueError("require x_max > x_min >= 0")
        if not (self.z_max > self.z_min >= 0.0):
            raise ValueError("require z_max > z_min >= 0")
        if self.nx < 2 or self.nz < 2:
            raise ValueError("require nx, nz >= 2")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_config(path: str) -> SystemConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if not isinstance(payload, dict):
            raise ValueError("config must be a JSON object")
        return SystemConfig(mu=float(payload["mu"]), R0=float(payload["R0"]))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad config file {path}: {exc}") from exc


def _load_coeffs(path: str) -> HarmonicSolution:
    try:
        return load_solution(path)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad coefficient file {path}: {exc}") from exc


def _point_record(cfg: SystemConfig, p: SosPoint, sol: HarmonicSolution | None) -> dict:
    mu = cfg.mu
    record: dict = {"R": p.R, "nu": p.nu}
    if abs(p.nu) >= _HALF_PI:
        s = math.copysign(s_limit(mu), p.nu)
        record.update(
            {
                "W": None,
                "region": "Pole",
                "h_R": 1.0 / math.sqrt(1.0 + mu),
                "h_nu": None,
                "jacobian": None,
                "f_S": 1.0,
                "f_C": 0.0,
                "s": s,
            }
        )
    else:
        W = compute_W(p.R, p.nu, cfg)
        tb = trig_auto(abs(W), mu)
        mb = metrics_at(p.R, p.nu, cfg)
        record.update(
            {
                "W": W,
                "region": region_of(abs(W), mu).value,
                "h_R": mb.h_R,
                "h_nu": mb.h_nu,
                "jacobian": mb.jacobian,
                "f_S": math.copysign(tb.f_S, p.nu) if p.nu else tb.f_S,
                "f_C": tb.f_C,
                "s": math.copysign(tb.s, p.nu) if p.nu else tb.s,
            }
        )
    if sol is not None:
        record["V"] = eval_V(sol, p.R, record["s"])
    return record


def cmd_eval(args) -> int:
    cfg = _load_config(args.config)
    sol = _load_coeffs(args.coeffs) if args.coeffs else None
    by_sos = args.R is not None or args.nu is not None
    by_cart = args.x is not None or args.z is not None
    if by_sos == by_cart:
        raise UsageError("give the point either as --R/--nu or as --x/--z")
    if by_sos:
        if args.R is None or args.nu is None:
            raise UsageError("need both --R and --nu")
        p = SosPoint(R=args.R, nu=args.nu, lam=args.lam)
    else:
        if args.x is None or args.z is None:
            raise UsageError("need both --x and --z")
        p = cartesian_to_sos(CartesianPoint(x=args.x, y=0.0, z=args.z), cfg)
    record = _point_record(cfg, p, sol)
    print(json.dumps(record))
    return EXIT_OK


def _grid_value(cfg, quantity, sol, x, z):
    """One grid sample through the full inverse-transform pipeline.

    Returns None for points with no value (origin; divergent quantities on
    the axis)."""
    try:
        p = cartesian_to_sos(CartesianPoint(x=x, y=0.0, z=z), cfg)
        if quantity == "V":
            return eval_V(sol, p.R, s_at_point(p.R, p.nu, cfg))
        if abs(p.nu) >= _HALF_PI:
            if quantity == "s":
                return math.copysign(s_limit(cfg.mu), p.nu)
            if quantity == "hR":
                return 1.0 / math.sqrt(1.0 + cfg.mu)
            return None  # W diverges on the axis
        W = compute_W(p.R, p.nu, cfg)
        if quantity == "W":
            return W
        tb = trig_auto(abs(W), cfg.mu)
        if quantity == "s":
            return math.copysign(tb.s, p.nu) if p.nu else tb.s
        return tb.h_R
    except SosError:
        return None


def grid_values(cfg: SystemConfig, spec: GridSpec, quantity: str, sol=None):
    """Row-major (z outer) iterator of (x, z, value or None), in units of R0."""
    if quantity not in ("s", "V", "hR", "W"):
        raise ValueError("quantity must be one of s, V, hR, W")
    if quantity == "V" and sol is None:
        raise ValueError("quantity V needs a coefficient file")
    for j in range(spec.nz):
        z = spec.z_min + (spec.z_max - spec.z_min) * j / (spec.nz - 1)
        for i in range(spec.nx):
            x = spec.x_min + (spec.x_max - spec.x_min) * i / (spec.nx - 1)
            yield x, z, _grid_value(cfg, quantity, sol, x * cfg.R0, z * cfg.R0)


def cmd_grid(args) -> int:
    cfg = _load_config(args.config)
    sol = _load_coeffs(args.coeffs) if args.coeffs else None
    try:
        spec = GridSpec(
            x_min=args.x_min,
            x_max=args.x_max,
            z_min=args.z_min,
            z_max=args.z_max,
            nx=args.nx,
            nz=args.nz,
        )
        if args.quantity == "V" and sol is None:
            raise ValueError("--quantity V requires --coeffs")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        out.write("x,z,value\n")
        for x, z, value in grid_values(cfg, spec, args.quantity, sol):
            sval = "" if value is None else _fmt(value)
            out.write(f"{_fmt(x)},{_fmt(z)},{sval}\n")
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    tables = None
    if args.fixtures:
        try:
            with open(args.fixtures, encoding="utf-8") as fh:
                tables = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad fixtures file {args.fixtures}: {exc}") from exc
    checks = verify_mod.run_suite(cfg, level=args.level, reference_tables=tables)
    all_passed = all(c.passed for c in checks)
    print(f"# verification suite  mu={_fmt(cfg.mu)}  R0={_fmt(cfg.R0)}  level={args.level}")
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name} max_residual={c.max_residual:.3e} tol={c.tolerance:.1e}")
    n_fail = sum(not c.passed for c in checks)
    print(f"# {len(checks) - n_fail}/{len(checks)} checks passed")
    if args.json:
        payload = {
            "mu": cfg.mu,
            "R0": cfg.R0,
            "level": args.level,
            "passed": all_passed,
            "checks": [
                {
                    "name": c.name,
                    "max_residual": c.max_residual,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in checks
            ],
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


def cmd_fit(args) -> int:
    cfg = _load_config(args.config)
    try:
        with open(args.samples, encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["nu", "V"]:
                raise ValueError("samples CSV must have header 'nu,V'")
            samples = [(float(row["nu"]), float(row["V"])) for row in reader]
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"bad samples file {args.samples}: {exc}") from exc
    sol, diag = fit_boundary(
        samples, args.degree, cfg, include_second_kind=args.second_kind
    )
    payload = json.dumps(solution_to_dict(sol), indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        print(f"residual_norm={_fmt(diag.residual_norm)} condition={_fmt(diag.condition)}")
    else:
        print(payload)
        print(
            f"residual_norm={_fmt(diag.residual_norm)} condition={_fmt(diag.condition)}",
            file=sys.stderr,
        )
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sosharmonics",
        description="Similar oblate spheroidal coordinates and interior harmonics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one point")
    p_eval.add_argument("--config", required=True)
    p_eval.add_argument("--coeffs")
    p_eval.add_argument("--R", type=float)
    p_eval.add_argument("--nu", type=float)
    p_eval.add_argument("--lam", type=float, default=0.0)
    p_eval.add_argument("--x", type=float)
    p_eval.add_argument("--z", type=float)
    p_eval.set_defaults(func=cmd_eval)

    p_grid = sub.add_parser("grid", help="CSV over a meridional quadrant grid")
    p_grid.add_argument("--config", required=True)
    p_grid.add_argument("--coeffs")
    p_grid.add_argument("--x-min", type=float, required=True)
    p_grid.add_argument("--x-max", type=float, required=True)
    p_grid.add_argument("--z-min", type=float, required=True)
    p_grid.add_argument("--z-max", type=float, required=True)
    p_grid.add_argument("--nx", type=int, required=True)
    p_grid.add_argument("--nz", type=int, required=True)
    p_grid.add_argument("--quantity", choices=["s", "V", "hR", "W"], required=True)
    p_grid.add_argument("--output", "-o")
    p_grid.set_defaults(func=cmd_grid)

    p_verify = sub.add_parser("verify", help="run the identity verification suites")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--level", choices=["quick", "full"], default="quick")
    p_verify.add_argument("--json", help="also write a machine-readable report")
    p_verify.add_argument(
        "--fixtures", help="replace the built-in polynomial reference tables"
    )
    p_verify.set_defaults(func=cmd_verify)

    p_fit = sub.add_parser("fit", help="fit boundary samples on the reference spheroid")
    p_fit.add_argument("--config", required=True)
    p_fit.add_argument("samples", help="CSV file with header 'nu,V'")
    p_fit.add_argument("--degree", type=int, required=True)
    p_fit.add_argument("--second-kind", action="store_true")
    p_fit.add_argument("--output", "-o")
    p_fit.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SosError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
