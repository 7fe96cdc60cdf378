"""Command line front end: resolve a configuration, run it, write results.

Outputs per run: ``snapshots.csv`` (long format, header t,x,u),
``summary.json`` (manifest, traces, reports) and ``manifest.json`` (the
fully resolved configuration; feeding it back through ``--config``
reproduces the CSV byte for byte).  ``compare`` runs two flux laws on one
configuration and writes ``compare.csv`` plus ``verdict.json``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import max_principle_check, steady_state_time
from .flux import FluxKind
from .scenarios import SCENARIO_NAMES, build_initial, make_scenario
from .solver import (
    BoundarySpec,
    ConfigurationError,
    Dirichlet,
    FixedFlux,
    Grid,
    InitialSpec,
    InstabilityError,
    RunResult,
    SimConfig,
    run,
    stability_ratio,
)

_FLUX_CHOICES = tuple(kind.value for kind in FluxKind)
_TRACE_POINT_LIMIT = 10_000


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _bc_to_dict(bc) -> dict:
    kind = "dirichlet" if isinstance(bc, Dirichlet) else "fixed-flux"
    return {"kind": kind, "value": bc.value}


def _bc_from_dict(data: dict):
    kind = data["kind"]
    if kind == "dirichlet":
        return Dirichlet(float(data["value"]))
    if kind == "fixed-flux":
        return FixedFlux(float(data["value"]))
    raise ConfigurationError(f"unknown boundary kind {kind!r}")


def _parse_bc_flag(text: str):
    # --bc-left dirichlet:5.0 | --bc-left flux:0.0
    try:
        kind, raw = text.split(":", 1)
        value = float(raw)
    except ValueError:
        raise ConfigurationError(
            f"boundary override {text!r} must look like dirichlet:VALUE or flux:VALUE"
        ) from None
    if kind == "dirichlet":
        return Dirichlet(value)
    if kind in ("flux", "fixed-flux"):
        return FixedFlux(value)
    raise ConfigurationError(f"unknown boundary kind {kind!r} in {text!r}")


def config_to_mapping(cfg: SimConfig) -> dict:
    return {
        "scenario": cfg.scenario,
        "alpha": cfg.alpha,
        "n": cfg.n,
        "dt": cfg.dt,
        "t_end": cfg.t_end,
        "snapshot_times": list(cfg.snapshot_times),
        "flux": cfg.flux.value,
        "bc": {"left": _bc_to_dict(cfg.bc.left), "right": _bc_to_dict(cfg.bc.right)},
        "initial": {"profile": cfg.initial.profile, "params": dict(cfg.initial.params)},
        "stability_warn_ratio": cfg.stability_warn_ratio,
        "kappa": cfg.kappa,
        "stop_when_steady": cfg.stop_when_steady,
        "steady_eps": cfg.steady_eps,
        "force_inconsistent_bc": cfg.force_inconsistent_bc,
    }


def mapping_to_config(data: dict) -> SimConfig:
    try:
        bc = BoundarySpec(
            _bc_from_dict(data["bc"]["left"]), _bc_from_dict(data["bc"]["right"])
        )
        initial = InitialSpec(
            data["initial"]["profile"], dict(data["initial"].get("params", {}))
        )
        return SimConfig(
            alpha=float(data["alpha"]),
            n=int(data["n"]),
            dt=float(data["dt"]),
            t_end=float(data["t_end"]),
            snapshot_times=tuple(float(t) for t in data["snapshot_times"]),
            flux=FluxKind.from_name(data["flux"]),
            bc=bc,
            initial=initial,
            stability_warn_ratio=float(data.get("stability_warn_ratio", 0.5)),
            kappa=float(data.get("kappa", 1.0)),
            stop_when_steady=bool(data.get("stop_when_steady", False)),
            steady_eps=float(data.get("steady_eps", 1e-10)),
            force_inconsistent_bc=bool(data.get("force_inconsistent_bc", False)),
            scenario=data.get("scenario"),
        )
    except KeyError as exc:
        raise ConfigurationError(f"configuration is missing key {exc}") from None


def build_manifest(cfg: SimConfig, grid: Grid) -> dict:
    manifest = {"tool": "fracflux", "version": __version__}
    manifest.update(config_to_mapping(cfg))
    manifest["dx"] = grid.dx
    manifest["stability_ratio"] = stability_ratio(cfg, grid)
    return manifest


def resolve_config(args: argparse.Namespace, flux_override: str | None) -> SimConfig:
    """Merge scenario defaults, config-file values and flag overrides.

    Precedence: flags beat the file, the file beats the scenario template.
    """
    file_data: dict = {}
    if args.config:
        file_data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    scenario_name = args.scenario or file_data.get("scenario")

    if scenario_name:
        base_alpha = file_data.get("alpha", 0.5)
        if args.alpha is not None:
            base_alpha = args.alpha
        scenario = make_scenario(scenario_name, alpha=float(base_alpha))
        mapping = config_to_mapping(scenario.cfg)
    else:
        if "initial" not in file_data:
            raise ConfigurationError(
                "no scenario given and the config file does not define an "
                "initial profile; pass --scenario or a complete --config"
            )
        mapping = {
            "scenario": None,
            "alpha": 0.5,
            "n": 100,
            "dt": 0.0005,
            "t_end": 1.0,
            "snapshot_times": [],
            "flux": "caputo",
            "bc": {
                "left": {"kind": "fixed-flux", "value": 0.0},
                "right": {"kind": "fixed-flux", "value": 0.0},
            },
        }

    for key in (
        "alpha",
        "n",
        "dt",
        "t_end",
        "snapshot_times",
        "flux",
        "bc",
        "initial",
        "stability_warn_ratio",
        "kappa",
        "stop_when_steady",
        "steady_eps",
        "force_inconsistent_bc",
    ):
        if key in file_data:
            mapping[key] = file_data[key]
    mapping["scenario"] = scenario_name

    if args.alpha is not None:
        mapping["alpha"] = args.alpha
    if args.n is not None:
        mapping["n"] = args.n
    if args.dt is not None:
        mapping["dt"] = args.dt
    if args.t_end is not None:
        mapping["t_end"] = args.t_end
    if args.snapshots is not None:
        mapping["snapshot_times"] = [float(t) for t in args.snapshots.split(",") if t]
    if flux_override is not None:
        mapping["flux"] = flux_override
    if args.bc_left is not None:
        mapping.setdefault("bc", {})["left"] = _bc_to_dict(_parse_bc_flag(args.bc_left))
    if args.bc_right is not None:
        mapping.setdefault("bc", {})["right"] = _bc_to_dict(_parse_bc_flag(args.bc_right))
    if args.kappa is not None:
        mapping["kappa"] = args.kappa
    if args.stop_when_steady is not None:
        mapping["stop_when_steady"] = args.stop_when_steady
    if args.force_inconsistent_bc:
        mapping["force_inconsistent_bc"] = True

    if not mapping.get("snapshot_times"):
        mapping["snapshot_times"] = [mapping["t_end"]]
    return mapping_to_config(mapping)


def _downsample_indices(length: int, limit: int = _TRACE_POINT_LIMIT) -> list[int]:
    if length <= limit:
        return list(range(length))
    stride = math.ceil(length / limit)
    idx = list(range(0, length, stride))
    if idx[-1] != length - 1:
        idx.append(length - 1)
    return idx


def write_snapshots_csv(path: Path, grid: Grid, result: RunResult) -> None:
    x = grid.x
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write("t,x,u\n")
        for t, u in zip(result.snapshot_times, result.snapshots):
            t_str = _fmt(t)
            for i in range(x.size):
                fh.write(f"{t_str},{_fmt(x[i])},{_fmt(u[i])}\n")


def write_summary_json(
    path: Path, manifest: dict, result: RunResult, initial_u: np.ndarray
) -> None:
    trace = result.trace
    idx = _downsample_indices(trace.t.size)
    principle = max_principle_check(trace, initial_u)
    summary = {
        "manifest": manifest,
        "steps_taken": result.steps_taken,
        "steady_stop_time": result.steady_stop_time,
        "steady_state_time": steady_state_time(trace, result.cfg.steady_eps),
        "max_principle": principle.to_dict(),
        "mass_trace": {
            "t": [trace.t[i] for i in idx],
            "mass": [trace.mass[i] for i in idx],
        },
        "extrema_trace": {
            "t": [trace.t[i] for i in idx],
            "min": [trace.u_min[i] for i in idx],
            "max": [trace.u_max[i] for i in idx],
        },
    }
    if result.decomposition is not None:
        summary["flux_decomposition"] = {
            "t": result.final.t,
            "diffusive": list(result.decomposition.diffusive),
            "advective": list(result.decomposition.advective),
        }
    path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")


def run_command(args: argparse.Namespace) -> int:
    cfg = resolve_config(args, args.flux)
    grid = Grid(cfg.n)
    initial = build_initial(cfg.initial, grid)
    result = run(cfg, grid, initial)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = build_manifest(cfg, grid)
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    write_snapshots_csv(out_dir / "snapshots.csv", grid, result)
    write_summary_json(out_dir / "summary.json", manifest, result, initial.u)

    final_mass = result.trace.mass[-1]
    print(
        f"run finished: {result.steps_taken} steps, final t={result.final.t:g}, "
        f"mass={final_mass:.12g}, outputs in {out_dir}"
    )
    return 0


def compare_command(args: argparse.Namespace) -> int:
    cfg_a = resolve_config(args, args.flux_a)
    cfg_b = resolve_config(args, args.flux_b)
    grid = Grid(cfg_a.n)
    initial = build_initial(cfg_a.initial, grid)
    result_a = run(cfg_a, grid, initial)
    result_b = run(cfg_b, grid, build_initial(cfg_b.initial, grid))

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    x = grid.x
    per_snapshot = []
    with (out_dir / "compare.csv").open("w", encoding="utf-8", newline="") as fh:
        fh.write("t,x,u_a,u_b,diff\n")
        for t, ua, ub in zip(
            result_a.snapshot_times, result_a.snapshots, result_b.snapshots
        ):
            diff = ua - ub
            per_snapshot.append(
                {"t": t, "max_abs_diff": float(np.abs(diff).max())}
            )
            t_str = _fmt(t)
            for i in range(x.size):
                fh.write(
                    f"{t_str},{_fmt(x[i])},{_fmt(ua[i])},{_fmt(ub[i])},{_fmt(diff[i])}\n"
                )
    verdict = {
        "manifest": build_manifest(cfg_a, grid),
        "flux_a": cfg_a.flux.value,
        "flux_b": cfg_b.flux.value,
        "per_snapshot": per_snapshot,
        "max_abs_diff": max(entry["max_abs_diff"] for entry in per_snapshot),
    }
    (out_dir / "verdict.json").write_text(
        json.dumps(verdict, indent=2) + "\n", encoding="utf-8"
    )
    print(
        f"compare finished: {cfg_a.flux.value} vs {cfg_b.flux.value}, "
        f"max|diff|={verdict['max_abs_diff']:.6g}, outputs in {out_dir}"
    )
    return 0


def scenarios_command(_: argparse.Namespace) -> int:
    for name in SCENARIO_NAMES:
        scenario = make_scenario(name)
        print(f"{name}: {scenario.expected_qualitative}")
    return 0


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", choices=SCENARIO_NAMES, help="built-in scenario name")
    parser.add_argument("--config", help="path to a JSON config or an emitted manifest.json")
    parser.add_argument("--alpha", type=float, help="fractional order in (0, 1]")
    parser.add_argument("--n", type=int, help="number of grid intervals (n+1 nodes)")
    parser.add_argument("--dt", type=float, help="time step")
    parser.add_argument("--t-end", type=float, dest="t_end", help="final time")
    parser.add_argument(
        "--snapshots", help="comma-separated snapshot times, e.g. 0.01,0.04,0.2"
    )
    parser.add_argument(
        "--bc-left", help="left boundary override, dirichlet:VALUE or flux:VALUE"
    )
    parser.add_argument(
        "--bc-right", help="right boundary override, dirichlet:VALUE or flux:VALUE"
    )
    parser.add_argument("--kappa", type=float, help="scalar diffusivity multiplier")
    parser.add_argument(
        "--stop-when-steady",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="stop once the per-step change drops below the steady threshold",
    )
    parser.add_argument(
        "--force-inconsistent-bc",
        action="store_true",
        help="run even if the initial data contradicts a Dirichlet value",
    )
    parser.add_argument("--out-dir", default=".", help="directory for output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracflux",
        description="Control-volume diffusion runs with interchangeable flux laws",
    )
    parser.add_argument("--version", action="version", version=f"fracflux {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run one configuration and write outputs")
    _add_common_options(run_parser)
    run_parser.add_argument("--flux", choices=_FLUX_CHOICES, help="flux law to use")
    run_parser.set_defaults(handler=run_command)

    cmp_parser = sub.add_parser("compare", help="run two flux laws side by side")
    _add_common_options(cmp_parser)
    cmp_parser.add_argument("--flux-a", required=True, choices=_FLUX_CHOICES)
    cmp_parser.add_argument("--flux-b", required=True, choices=_FLUX_CHOICES)
    cmp_parser.set_defaults(handler=compare_command)

    sc_parser = sub.add_parser("scenarios", help="list built-in scenario names")
    sc_parser.set_defaults(handler=scenarios_command)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except InstabilityError as exc:
        print(f"run aborted: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
