"""Command-line front end.

Subcommands: ``analytic`` (closed-form waits at one state), ``eq``
(equilibrium set with stability labels), ``poa`` (worst-case price of
anarchy, single point or a grid sweep), ``sim`` (discrete-event run checked
against the closed forms), ``dyn`` (best-response dynamics), and ``verify``
(the internal identity suite).

Model parameters come from flags (--lambda --mu --k --cost) or from a
key=value config file via --config; explicit flags override file values.
Human-readable output prints 9 significant digits; machine output (--out,
CSV or JSON) uses shortest round-trip float formatting so files re-parse
and re-print byte-identically.  Exit codes: 0 success, 2 validation error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analytic, equilibrium, welfare
from .errors import InvalidConfig, QueueGameError
from .model import ModelParams, config_values, service_spec_for_k

__all__ = ["main", "app", "SweepSpec", "parse_axis"]


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def render_cell(value) -> str:
    """One CSV cell: '' for None, true/false for bools, repr for floats."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_records(records: list[dict], fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(records[0].keys())
        for rec in records:
            writer.writerow([render_cell(v) for v in rec.values()])
        text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --- parameter assembly -----------------------------------------------------

def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lambda", dest="lam", type=float, default=None,
                        help="arrival rate, customers per unit time")
    parser.add_argument("--mu", type=float, default=None,
                        help="service rate, per unit time")
    parser.add_argument("--k", type=float, default=None,
                        help="variance parameter K; second moment of service is K/mu^2")
    parser.add_argument("--cost", type=float, default=None,
                        help="premium fee, in units of expected waiting time")
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="key=value file with lambda/mu/k/cost; flags override")


def _resolve_params(args, need_cost: bool = False) -> ModelParams:
    values: dict[str, float] = {}
    if args.config:
        values = config_values(Path(args.config).read_text())
    for flag, field in (("lam", "lam"), ("mu", "mu"), ("k", "k_var"), ("cost", "cost")):
        v = getattr(args, flag, None)
        if v is not None:
            values[field] = v
    if "cost" not in values:
        if need_cost:
            raise InvalidConfig("missing fee: pass --cost or put cost= in the config file")
        values["cost"] = 0.0
    missing = [f for n, f in (("--lambda", "lam"), ("--mu", "mu"), ("--k", "k_var"))
               if f not in values]
    if missing:
        raise InvalidConfig(
            "missing parameters: pass --lambda/--mu/--k or a --config file"
        )
    return ModelParams(**values)


# --- sweep axes --------------------------------------------------------------

def parse_axis(spec: str) -> tuple[float, ...]:
    """Parse 'start:stop:count' with optional ':log' suffix into grid values."""
    parts = spec.split(":")
    log = False
    if len(parts) == 4:
        if parts[3] not in ("log", "lin"):
            raise InvalidConfig(f"axis suffix must be 'log' or 'lin', got {parts[3]!r}")
        log = parts[3] == "log"
        parts = parts[:3]
    if len(parts) != 3:
        raise InvalidConfig(f"axis must be start:stop:count[:log], got {spec!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InvalidConfig(f"bad axis {spec!r}") from exc
    if count < 2:
        raise InvalidConfig(f"axis count must be >= 2, got {count}")
    grid = np.geomspace(start, stop, count) if log else np.linspace(start, stop, count)
    return tuple(float(v) for v in grid)


@dataclass(frozen=True)
class SweepSpec:
    """Axes (name -> grid values), output format, and output path for a sweep."""

    axes: tuple[tuple[str, tuple[float, ...]], ...]
    fmt: str = "csv"
    out: str | None = None


# --- subcommands -------------------------------------------------------------

def cmd_analytic(args) -> int:
    params = _resolve_params(args)
    w = analytic.waits(params, args.phi, args.discipline)
    gap = analytic.cost_gap(params, args.phi, args.discipline)
    print(f"discipline     {args.discipline}")
    print(f"rho            {_fmt(params.rho)}")
    print(f"phi            {_fmt(args.phi)}")
    print(f"wait_premium   {_fmt(w.premium)}")
    print(f"wait_ordinary  {_fmt(w.ordinary)}")
    print(f"wait_average   {_fmt(w.average)}")
    print(f"cost_gap       {_fmt(gap)}")
    return 0


def _ess_suffix(flag: bool | None) -> str:
    if flag is None:
        return ""
    return " (ESS)" if flag else " (not ESS)"


def cmd_eq(args) -> int:
    params = _resolve_params(args, need_cost=True)
    if args.discipline == "pr":
        eqs = equilibrium.equilibria_pr(params)
        shape = equilibrium.classify_cost_curve(params).value
    else:
        eqs = equilibrium.equilibria_np(params)
        shape = equilibrium.CurveShape.INCREASING.value
    gap = analytic.cost_gap_pr if args.discipline == "pr" else analytic.cost_gap_np

    parts = []
    if eqs.all_phi_indifferent:
        parts.append("every phi in [0,1] is an equilibrium (indifferent)")
    if eqs.no_one_joins:
        parts.append("no_one_joins" + _ess_suffix(eqs.no_one_ess))
    if eqs.everyone_joins:
        parts.append("everyone_joins" + _ess_suffix(eqs.everyone_ess))
    if eqs.some_join_phi is not None:
        parts.append(f"some_join phi_e={_fmt(eqs.some_join_phi)}"
                     + _ess_suffix(eqs.some_join_ess))
    print(f"discipline  {args.discipline}")
    print(f"curve       {shape}")
    print(f"fee         {_fmt(params.cost)}")
    print(f"gap_phi0    {_fmt(gap(params, 0.0))}")
    print(f"gap_phi1    {_fmt(gap(params, 1.0))}")
    print(f"equilibria  {'; '.join(parts)}")
    print(f"boundary    {'yes' if eqs.boundary else 'no'}")
    if args.out is not None:
        record = {"lambda": params.lam, "mu": params.mu, "k": params.k_var,
                  "cost": params.cost, "discipline": args.discipline,
                  "curve": shape}
        record.update(eqs.to_record())
        _emit_records([record], args.format, args.out)
    return 0


def _poa_row(rho: float, k: float) -> dict:
    # component waits reported at mu = 1; the ratio itself is mu-independent
    params = ModelParams(lam=rho, mu=1.0, k_var=k)
    opt = welfare.socially_optimal(params)
    opt_phi = opt.phis[0] if opt.phis else 0.0
    return {
        "rho": rho,
        "k": k,
        "poa": welfare.poa_worst_case(rho, k),
        "worst_phi": welfare.worst_state(params),
        "opt_phi": opt_phi,
        "opt_wait": opt.min_avg_wait,
    }


def cmd_poa(args) -> int:
    if args.mode == "sweep":
        spec = SweepSpec(
            axes=(("rho", parse_axis(args.rho)), ("k", parse_axis(args.k))),
            fmt=args.format,
            out=args.out,
        )
        axes = dict(spec.axes)
        rows = [_poa_row(rho, k) for rho in axes["rho"] for k in axes["k"]]
        _emit_records(rows, spec.fmt, spec.out)
        sup = welfare.poa_bound_sweep(axes["rho"], axes["k"])
        print(f"points      {sup.n_points}")
        print(f"max_poa     {_fmt(sup.max_poa)}")
        print(f"at_rho      {_fmt(sup.at_rho)}")
        print(f"at_k        {_fmt(sup.at_k)}")
        return 0
    if args.rho is None or args.k is None:
        raise InvalidConfig("poa needs --rho and --k (or the 'sweep' mode)")
    row = _poa_row(float(args.rho), float(args.k))
    for key in ("rho", "k", "poa", "worst_phi", "opt_phi", "opt_wait"):
        print(f"{key:<11} {_fmt(row[key])}")
    return 0


def cmd_sim(args) -> int:
    from . import simulator  # deferred: numba import is slow

    params = _resolve_params(args)
    spec = service_spec_for_k(params.mu, params.k_var, args.family)
    config = simulator.SimConfig(
        params=params,
        phi=args.phi,
        discipline=args.discipline,
        service=spec,
        n_arrivals=args.arrivals,
        warmup_arrivals=args.warmup,
        n_batches=args.batches,
        seed=args.seed,
    )
    result = simulator.run_sim(config)
    targets = analytic.waits(params, args.phi, args.discipline)
    print(f"discipline  {args.discipline}   family {spec.family}   seed {args.seed}")
    print("estimate        mean          half_width    n         target        covered")
    for name, est, target in (
        ("wait_premium", result.wait_premium, targets.premium),
        ("wait_ordinary", result.wait_ordinary, targets.ordinary),
        ("wait_average", result.wait_average, targets.average),
    ):
        if est is None:
            print(f"{name:<15} no observations{'':<24}{_fmt(target):<14}n/a")
            continue
        mark = "yes" if est.covers(target) else "NO"
        print(
            f"{name:<15} {_fmt(est.mean):<13} {_fmt(est.half_width):<13} "
            f"{est.n_observations:<9} {_fmt(target):<13} {mark}"
        )
    if args.out is not None:
        _emit_records([result.to_record()], args.format, args.out)
    return 0


def cmd_dyn(args) -> int:
    from . import dynamics

    params = _resolve_params(args, need_cost=True)
    traj = dynamics.iterate(
        params,
        args.phi0,
        step_size=args.step,
        tolerance=args.tolerance,
        max_iters=args.iters,
        discipline=args.discipline,
    )
    print(f"terminal    {_fmt(traj.terminal)}")
    print(f"converged   {'yes' if traj.converged else 'no'}")
    print(f"iterations  {traj.iterations_used}")
    if args.out is not None:
        rows = [{"iteration": i, "phi": phi} for i, phi in traj.points]
        _emit_records(rows, args.format, args.out)
    return 0


def cmd_verify(args) -> int:
    from . import selfcheck

    results = selfcheck.run_all()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.detail})")
    return 0 if all(r.passed for r in results) else 3


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mg1game",
        description="Equilibria, welfare, and price of anarchy for "
                    "priority-purchase M|G|1 queues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form waits and gap at one state")
    _add_param_flags(p)
    p.add_argument("--phi", type=float, required=True,
                   help="premium fraction in [0,1]")
    p.add_argument("--discipline", choices=("pr", "np"), default="pr",
                   help="pr: preemptive-resume, np: non-preemptive")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("eq", help="equilibrium set with ESS labels")
    _add_param_flags(p)
    p.add_argument("--discipline", choices=("pr", "np"), default="pr")
    p.add_argument("--out", default=None, help="write the flat record here")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("poa", help="worst-case price of anarchy (point or sweep)")
    p.add_argument("mode", nargs="?", choices=("sweep",),
                   help="omit for a single point")
    p.add_argument("--rho", default=None,
                   help="load in (0,1); in sweep mode an axis start:stop:count[:log]")
    p.add_argument("--k", default=None,
                   help="variance parameter >= 1; axis syntax in sweep mode")
    p.add_argument("--out", default=None, help="sweep output file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_poa)

    p = sub.add_parser("sim", help="discrete-event run vs the closed forms")
    _add_param_flags(p)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--discipline", choices=("pr", "np"), default="pr")
    p.add_argument("--arrivals", type=int, required=True,
                   help="total customers to generate")
    p.add_argument("--warmup", type=int, default=0,
                   help="customers discarded before statistics")
    p.add_argument("--batches", type=int, default=20,
                   help="batch count for the confidence interval")
    p.add_argument("--seed", type=int, required=True,
                   help="master seed; equal seeds give bit-identical runs")
    p.add_argument("--family", choices=("auto", "gamma", "hyperexp", "det", "exp"),
                   default="auto", help="service distribution family")
    p.add_argument("--out", default=None, help="write the result record here")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("dyn", help="best-response dynamics from phi0")
    _add_param_flags(p)
    p.add_argument("--phi0", type=float, required=True)
    p.add_argument("--step", type=float, default=0.1, help="initial inertia step")
    p.add_argument("--iters", type=int, default=100_000, help="iteration cap")
    p.add_argument("--tolerance", type=float, default=1e-8,
                   help="stop when the per-iteration change drops below this")
    p.add_argument("--discipline", choices=("pr", "np"), default="pr")
    p.add_argument("--out", default=None, help="write (iteration, phi) rows here")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_dyn)

    p = sub.add_parser("verify", help="run the internal identity/invariant suite")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except QueueGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
