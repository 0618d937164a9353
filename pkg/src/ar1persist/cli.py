"""Command-line front end.

Subcommands: coeffs, lambda, persistence, radius, validate.  Output is
text by default; --output csv|json switches the serialization.  Every
report carries the parameters that produced it, so runs are reproducible
from the emitted provenance alone.  Exit codes: 0 success, 1 check or
convergence failure, 2 usage/domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, mc, series, spectral, validate
from .exact import render_pi_form

DEFAULT_SERIES_ORDER = 40
DEFAULT_RADIUS_ORDER = 60
DEFAULT_RADIUS_WINDOW = 20
DEFAULT_PATHS = 1_000_000
DEFAULT_SEED = 42
DEFAULT_BATCHES = 20
DEFAULT_NMAX = 40


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict
    provenance: dict
    text_lines: list = field(default_factory=list)
    exit_code: int = 0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "provenance": self.provenance,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        table = self.outputs.get("table")
        if table:
            writer.writerow(table["columns"])
            for row in table["rows"]:
                writer.writerow(row)
        else:
            writer.writerow(["key", "value"])
            for key in sorted(self.outputs):
                writer.writerow([key, self.outputs[key]])
        return buf.getvalue().rstrip("\r\n")

    def to_text(self) -> str:
        return "\n".join(self.text_lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


def _provenance(start: float, **extra) -> dict:
    prov = {"version": __version__, "wall_seconds": round(time.time() - start, 3)}
    prov.update(extra)
    return prov


def _rule_from_args(args) -> spectral.QuadratureRule:
    return spectral.build_rule(nodes_per_panel=args.nodes, panels=args.panels, L=args.L)


def _grid_provenance(args) -> dict:
    return {"nodes_per_panel": args.nodes, "panels": args.panels, "L": args.L}


def cmd_coeffs(args) -> RunReport:
    start = time.time()
    if args.order < 0:
        raise ValueError("order must be nonnegative")
    exp = series.expand(args.order)
    rows = []
    lines = []
    for n, k in enumerate(exp.K):
        if args.format == "exact":
            pf = k.pi_form()
            value = render_pi_form(pf) if pf is not None else k.s_form_str()
        else:
            value = repr(k.eval())
        rows.append([n, value])
        lines.append(f"K{n} = {value}")
    return RunReport(
        command="coeffs",
        inputs={"order": args.order, "format": args.format},
        outputs={"table": {"columns": ["n", "K_n"], "rows": rows}},
        provenance=_provenance(start),
        text_lines=lines,
    )


def cmd_lambda(args) -> RunReport:
    start = time.time()
    outputs = {}
    lines = []
    exit_code = 0
    prov_extra = {}
    if args.method in ("series", "both"):
        exp = series.expand(args.order)
        lam_s = series.eval_lambda_series(exp, args.rho, args.order)
        outputs["lambda_series"] = lam_s
        lines.append(f"lambda (series, order {args.order}) = {lam_s!r}")
        prov_extra["series_order"] = args.order
    if args.method in ("nystrom", "both"):
        rule = _rule_from_args(args)
        result = spectral.perron_eigenpair(spectral.discretize(args.rho, rule),
                                           tol=args.tol)
        outputs["lambda_nystrom"] = result.eigenvalue
        lines.append(f"lambda (nystrom, {rule.nodes.size} nodes) = {result.eigenvalue!r}")
        prov_extra.update(_grid_provenance(args))
        prov_extra["tol"] = args.tol
        prov_extra["iterations"] = result.iterations
        if not result.converged:
            lines.append("warning: power iteration did not converge")
            exit_code = 1
    if args.method == "both":
        diff = abs(outputs["lambda_series"] - outputs["lambda_nystrom"])
        outputs["difference"] = diff
        lines.append(f"absolute difference = {diff!r}")
    return RunReport(
        command="lambda",
        inputs={"rho": args.rho, "method": args.method},
        outputs=outputs,
        provenance=_provenance(start, **prov_extra),
        text_lines=lines,
        exit_code=exit_code,
    )


def cmd_persistence(args) -> RunReport:
    start = time.time()
    config = mc.SimConfig(rho=args.rho, n_max=args.nmax, paths=args.paths,
                          seed=args.seed, batches=args.batches)
    est = mc.simulate(config)
    slope, se = mc.fit_exponent(est, args.fit_lo, args.fit_hi)
    rule = _rule_from_args(args)
    lam = spectral.perron_eigenpair(spectral.discretize(args.rho, rule)).eigenvalue

    rows = []
    lines = [f"{'N':>4} {'survivors':>12} {'p_hat':>14} {'stderr':>12}"]
    for n in range(config.n_max + 1):
        rows.append([n, int(est.survivors[n]), est.p_hat[n], est.stderr[n]])
        lines.append(f"{n:>4} {est.survivors[n]:>12} {est.p_hat[n]:>14.8e} "
                     f"{est.stderr[n]:>12.4e}")
    lines.append(f"fitted slope over N in [{args.fit_lo}, {args.fit_hi}]: "
                 f"{slope:.8f} +/- {se:.8f}")
    lines.append(f"log lambda (nystrom): {math.log(lam):.8f}")
    return RunReport(
        command="persistence",
        inputs={"rho": args.rho, "n_max": args.nmax, "paths": args.paths,
                "seed": args.seed, "batches": args.batches,
                "fit_window": [args.fit_lo, args.fit_hi]},
        outputs={"table": {"columns": ["N", "survivors", "p_hat", "stderr"],
                           "rows": rows},
                 "slope": slope, "slope_se": se,
                 "log_lambda_nystrom": math.log(lam)},
        provenance=_provenance(start, seed=args.seed, generator=est.rng,
                               **_grid_provenance(args)),
        text_lines=lines,
    )


def cmd_radius(args) -> RunReport:
    start = time.time()
    a, c, d = Fraction(1, 2), Fraction(1), Fraction(1, 2)
    bound = series.kato_radius_bound(a, c, d)
    exp = series.expand(args.order)
    estimate = series.radius_estimate(exp, args.window)
    lines = [
        f"proven lower bound: {bound} (from a={a}, c={c}, d={d})",
        f"empirical root-test ESTIMATE (order {args.order}, window {args.window}): "
        f"{estimate:.6f}",
        "the estimate is numerical only, not a proven value",
    ]
    return RunReport(
        command="radius",
        inputs={"order": args.order, "window": args.window},
        outputs={"proven_lower_bound": str(bound),
                 "bound_inputs": {"a": str(a), "c": str(c), "d": str(d)},
                 "empirical_estimate": estimate,
                 "estimate_only": True},
        provenance=_provenance(start),
        text_lines=lines,
    )


def cmd_validate(args) -> RunReport:
    start = time.time()
    checks = validate.run_suite(args.suite)
    failed = [c["name"] for c in checks if not c["passed"]]
    lines = []
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        lines.append(f"[{status}] {c['name']}: measured={c['measured']} "
                     f"required={c['required']} ({c['seconds']}s)")
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return RunReport(
        command="validate",
        inputs={"suite": args.suite},
        outputs={"checks": checks, "failed": failed},
        provenance=_provenance(start),
        text_lines=lines,
        exit_code=0 if not failed else 1,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ar1persist",
        description="Persistence exponent of Gaussian AR(1) processes "
                    "by exact series, spectral discretization, and Monte Carlo.",
    )
    parser.add_argument("--output", choices=["text", "csv", "json"], default="text",
                        help="serialization of the run report")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_grid(p):
        p.add_argument("--nodes", type=int, default=spectral.DEFAULT_NODES_PER_PANEL,
                       help="Gauss-Legendre nodes per panel")
        p.add_argument("--panels", type=int, default=spectral.DEFAULT_PANELS)
        p.add_argument("--L", type=float, default=spectral.DEFAULT_L,
                       help="truncation point of the half-line grid")

    p = sub.add_parser("coeffs", help="exact eigenvalue coefficients")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=["exact", "float"], default="exact")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("lambda", help="persistence exponent by any method")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--method", choices=["series", "nystrom", "both"], default="both")
    p.add_argument("--order", type=int, default=DEFAULT_SERIES_ORDER)
    add_grid(p)
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("persistence", help="Monte Carlo survival table and fit")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    p.add_argument("--paths", type=int, default=DEFAULT_PATHS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--batches", type=int, default=DEFAULT_BATCHES)
    p.add_argument("--fit-lo", type=int, default=10)
    p.add_argument("--fit-hi", type=int, default=30)
    add_grid(p)
    p.set_defaults(func=cmd_persistence)

    p = sub.add_parser("radius", help="convergence-radius bound and estimate")
    p.add_argument("--order", type=int, default=DEFAULT_RADIUS_ORDER)
    p.add_argument("--window", type=int, default=DEFAULT_RADIUS_WINDOW)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("validate", help="run the cross-validation suite")
    p.add_argument("--suite", choices=["fast", "full"], required=True)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render(args.output))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
