"""Command-line surface: build and run reservoirs, classify their activity,
and rerun the experiment suite, emitting CSV/JSON payloads and static SVG
plots.

Every run writes `config.echo.json` holding the fully resolved,
result-determining parameters; rerunning with `--config <that file>`
reproduces the CSV/JSON payloads byte for byte regardless of `--jobs`.
SVGs embed a generation timestamp unless `--deterministic` is given.
Exit codes: 0 success (a non-oscillatory outcome is still a result),
2 configuration error, 3 numeric error, 4 I/O error.
"""

import argparse
import copy
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, svgplot
from .errors import ConfigError, InputError, NumericError
from .oscillation import classify_trajectory
from .reservoir import Reservoir, init_state
from .seeding import derive_seed
from .topology import VALID_KINDS, TopologySpec, build_weights, sample_leak_vector
from .experiments import (
    distribution_from_outcomes,
    gen_lorenz,
    gen_sinusoid,
    gen_square,
    injection_ratio_experiment,
    rebuild_trial,
    reproduce_waveform,
    subreservoir_count_outcomes,
    sweep_heatmap,
    write_boxplot_csv,
    write_injection_csv,
    write_outcomes_jsonl,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

# Sub-seed role for the initial state drawn by `generate`/`topology-demo`.
_ROLE_STATE = 1
_ROLE_LEAK = 2

_SWEEP_LEAK_DEFAULT = [round(0.05 * i, 10) for i in range(1, 21)]
_SWEEP_RHO_DEFAULT = [round(0.1 * i, 10) for i in range(1, 31)]

_TOPOLOGY_DEFAULTS = {
    "kind": "dense",
    "n": 100,
    "density": 0.1,
    "sub_count": 1,
    "coupling_scale": 0.05,
    "coupling_density": 0.05,
    "inject_ensemble": False,
    "seed": 0,
}

DEFAULTS = {
    "generate": {
        "topology": dict(_TOPOLOGY_DEFAULTS),
        "rho": 1.25,
        "leak": 0.5,
        "tau": 1000,
        "plot_units": 5,
        "svg": True,
    },
    "sweep": {
        "leak_values": _SWEEP_LEAK_DEFAULT,
        "rho_values": _SWEEP_RHO_DEFAULT,
        "trials": 20,
        "n": 100,
        "tau": 1000,
        "cells": None,
        "seed": 0,
    },
    "inject-experiment": {
        "populations": [4, 10, 25, 50, 100],
        "trials": 200,
        "tau": 1000,
        "rho": 1.25,
        "leak": 0.5,
        "seed": 0,
    },
    "reproduce": {
        "target": "sine",
        "mode": "pure_sine",
        "freq": 0.05,
        "dt": None,
        "tau": None,
        "n": 500,
        "sub_count": 8,
        "coupling_scale": 0.05,
        "coupling_density": 0.05,
        "sub_counts": None,
        "trials": 30,
        "leak_mu": 0.6,
        "leak_sigma": 0.1,
        "rho": 1.25,
        "ridge_lambda": 1e-8,
        "washout": 100,
        "max_attempts": 10,
        "standardize": False,
        "seed": 0,
    },
    "topology-demo": {
        "n": 100,
        "rho": 1.25,
        "tau": 1000,
        "seed": 0,
    },
}

_TARGET_DT = {"sine": 1.0, "square": 0.01, "lorenz": 0.01}
_TARGET_TAU = {"sine": 1000, "square": 1000, "lorenz": 2000}


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soesn",
        description="Self-oscillatory echo state reservoirs: simulation, "
        "classification, readout training, and experiments.",
    )
    parser.add_argument("--version", action="version", version=f"soesn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_out):
        p.add_argument("--config", help="JSON config (e.g. a config.echo.json) to start from")
        p.add_argument("--out", default=default_out, help="output directory")
        p.add_argument("--force", action="store_true", help="overwrite existing outputs")
        p.add_argument("--deterministic", action="store_true",
                       help="omit the timestamp comment from SVG outputs")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for trials (never changes results)")
        p.add_argument("--seed", type=int, help="base seed (default: $SOESN_SEED or 0)")

    p = sub.add_parser("generate", help="build one reservoir, run it, classify it")
    common(p, "soesn-generate")
    p.add_argument("--topology", choices=VALID_KINDS, help="weight-matrix layout")
    p.add_argument("--n", type=int, help="population size")
    p.add_argument("--density", type=float, help="sparse connection probability")
    p.add_argument("--sub", type=int, help="number of sub-reservoirs")
    p.add_argument("--coupling-scale", type=float)
    p.add_argument("--coupling-density", type=float)
    p.add_argument("--inject", action=argparse.BooleanOptionalAction,
                   help="splice in the calibrated two-neuron ensemble")
    p.add_argument("--rho", type=float, help="target spectral radius")
    p.add_argument("--leak", type=float, help="constant leak rate")
    p.add_argument("--tau", type=int, help="steps to run")
    p.add_argument("--plot-units", type=int, help="units drawn in the trace SVG")
    p.add_argument("--svg", action=argparse.BooleanOptionalAction, help="emit the trace SVG")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sweep", help="leak x spectral-radius oscillation-ratio heatmap")
    common(p, "soesn-sweep")
    p.add_argument("--leak-values", type=_float_list, help="comma-separated leak grid")
    p.add_argument("--rho-values", type=_float_list, help="comma-separated rho grid")
    p.add_argument("--trials", type=int, help="reservoirs per cell")
    p.add_argument("--n", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--cells", type=int, help="cap the grid to about this many cells (smoke runs)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("inject-experiment",
                       help="oscillation ratio with vs without an injected ensemble")
    common(p, "soesn-inject")
    p.add_argument("--populations", type=_int_list, help="comma-separated population sizes")
    p.add_argument("--trials", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--leak", type=float)
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("reproduce", help="train the readout to reproduce a target waveform")
    common(p, "soesn-reproduce")
    p.add_argument("--target", choices=("sine", "square", "lorenz"))
    p.add_argument("--mode", choices=("pure_sine", "literal_ode"), help="sine flavour")
    p.add_argument("--freq", type=float, help="pure sine frequency (cycles per step)")
    p.add_argument("--dt", type=float, help="target sample spacing")
    p.add_argument("--tau", type=int, help="target steps (samples - 1)")
    p.add_argument("--n", type=int)
    p.add_argument("--sub", type=int, help="sub-reservoir count (single run)")
    p.add_argument("--sub-counts", type=_int_list,
                   help="comma-separated counts: run the boxplot sweep instead")
    p.add_argument("--trials", type=int, help="trials per count in sweep mode")
    p.add_argument("--coupling-scale", type=float)
    p.add_argument("--coupling-density", type=float)
    p.add_argument("--leak-mu", type=float)
    p.add_argument("--leak-sigma", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--ridge-lambda", type=float)
    p.add_argument("--washout", type=int)
    p.add_argument("--max-attempts", type=int)
    p.add_argument("--standardize", action=argparse.BooleanOptionalAction,
                   help="standardize target dimensions before the fit")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("topology-demo",
                       help="build each topology, run it, and emit trajectories + reports")
    common(p, "soesn-topology-demo")
    p.add_argument("--n", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--tau", type=int)
    p.set_defaults(func=cmd_topology_demo)

    return parser


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------


def _load_config_params(path: str, command: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    if "command" in data:
        if data["command"] != command:
            raise ConfigError(
                f"config {path} is for command {data['command']!r}, not {command!r}"
            )
        params = data.get("params", {})
    else:
        params = data
    if not isinstance(params, dict):
        raise ConfigError("config params must be a JSON object")
    return params


def _merge(defaults: dict, config: dict, label: str) -> dict:
    unknown = set(config) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown {label} fields: {sorted(unknown)}")
    merged = copy.deepcopy(defaults)
    for key, value in config.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = _merge(merged[key], value, f"{label}.{key}")
        else:
            merged[key] = value
    return merged


def _set_path(params: dict, path: str, value) -> None:
    node = params
    parts = path.split(".")
    for part in parts[:-1]:
        node = node[part]
    node[parts[-1]] = value


def _config_provides(config_params: dict, path: str) -> bool:
    node = config_params
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            return False
        node = node[part]
    return True


def _resolve(command: str, args, overrides: dict, seed_path: str = "seed") -> dict:
    """Defaults, overlaid by --config, overlaid by explicit flags.

    The seed resolves flag > config > $SOESN_SEED > default, so a stray
    environment seed never breaks a rerun from config.echo.json.
    """
    params = copy.deepcopy(DEFAULTS[command])
    config_params = {}
    if args.config:
        config_params = _load_config_params(args.config, command)
        params = _merge(params, config_params, command)
    for key, value in overrides.items():
        if value is None:
            continue
        _set_path(params, key, value)
    if args.seed is not None:
        _set_path(params, seed_path, args.seed)
    elif not _config_provides(config_params, seed_path):
        env = os.environ.get("SOESN_SEED")
        if env is not None:
            try:
                _set_path(params, seed_path, int(env))
            except ValueError as exc:
                raise ConfigError(f"SOESN_SEED must be an integer, got {env!r}") from exc
    return params


def _timestamp(args) -> str | None:
    if args.deterministic:
        return None
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _prepare_out(out_dir: str, filenames: list[str], force: bool) -> None:
    os.makedirs(out_dir, exist_ok=True)
    existing = [name for name in filenames if os.path.exists(os.path.join(out_dir, name))]
    if existing and not force:
        raise FileExistsError(
            f"refusing to overwrite {existing} in {out_dir}; pass --force to allow"
        )


def _write_echo(out_dir: str, command: str, params: dict) -> None:
    payload = {"artifact_version": __version__, "command": command, "params": params}
    with open(os.path.join(out_dir, "config.echo.json"), "w", encoding="utf-8",
              newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def _metadata(command: str, params: dict) -> dict:
    return {
        "artifact_version": __version__,
        "command": command,
        "params": json.dumps(params, sort_keys=True),
    }


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def _json_safe(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    return value


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    overrides = {
        "topology.kind": args.topology,
        "topology.n": args.n,
        "topology.density": args.density,
        "topology.sub_count": args.sub,
        "topology.coupling_scale": args.coupling_scale,
        "topology.coupling_density": args.coupling_density,
        "topology.inject_ensemble": args.inject,
        "rho": args.rho,
        "leak": args.leak,
        "tau": args.tau,
        "plot_units": args.plot_units,
        "svg": args.svg,
    }
    params = _resolve("generate", args, overrides, seed_path="topology.seed")
    try:
        spec = TopologySpec.from_dict(params["topology"])
    except InputError as exc:
        raise ConfigError(str(exc)) from exc
    if params["rho"] <= 0:
        raise ConfigError(f"rho must be positive, got {params['rho']}")
    if not 0 < params["leak"] <= 1:
        raise ConfigError(f"leak must lie in (0, 1], got {params['leak']}")
    if params["tau"] < 100:
        raise ConfigError("tau must be at least 100 (the classifier window)")

    files = ["config.echo.json", "trajectory.csv", "oscillation.json"]
    if params["svg"]:
        files.append("traces.svg")
    _prepare_out(args.out, files, args.force)

    W = build_weights(spec, params["rho"])
    state = init_state(spec.n, derive_seed(spec.seed, _ROLE_STATE))
    trajectory = Reservoir(W, params["leak"], state).run(params["tau"])
    report = classify_trajectory(trajectory)

    trajectory.to_csv(os.path.join(args.out, "trajectory.csv"))
    payload = {"metadata": _metadata("generate", params)} | report.to_json_dict()
    _write_json(os.path.join(args.out, "oscillation.json"), payload)
    if params["svg"]:
        count = max(1, min(params["plot_units"], trajectory.n))
        t = np.arange(trajectory.steps)
        series = [(f"x{i}", t, trajectory.unit(i)) for i in range(count)]
        svgplot.line_chart(
            os.path.join(args.out, "traces.svg"), series,
            f"unit traces (n={spec.n}, rho={params['rho']}, leak={params['leak']})",
            "step", "state", timestamp=_timestamp(args),
        )
    _write_echo(args.out, "generate", params)
    verdict = "self-oscillatory" if report.reservoir_is_self_oscillatory else "damped"
    print(f"generate: {verdict}; outputs in {args.out}")
    return EXIT_OK


def _capped_grid(leaks, rhos, cells):
    if cells is None:
        return leaks, rhos
    if cells < 1:
        raise ConfigError("cells must be at least 1")
    cols = min(cells, len(rhos))
    rows = max(1, min(len(leaks), cells // cols))
    return leaks[:rows], rhos[:cols]


def cmd_sweep(args) -> int:
    overrides = {
        "leak_values": args.leak_values,
        "rho_values": args.rho_values,
        "trials": args.trials,
        "n": args.n,
        "tau": args.tau,
        "cells": args.cells,
    }
    params = _resolve("sweep", args, overrides)
    leaks, rhos = _capped_grid(params["leak_values"], params["rho_values"], params["cells"])
    params["leak_values"], params["rho_values"] = leaks, rhos

    _prepare_out(args.out, ["config.echo.json", "sweep.csv", "heatmap.svg"], args.force)
    try:
        result = sweep_heatmap(
            leaks, rhos, params["trials"], params["n"], params["tau"],
            params["seed"], jobs=args.jobs,
        )
    except InputError as exc:
        raise ConfigError(str(exc)) from exc

    with open(os.path.join(args.out, "sweep.csv"), "w", encoding="utf-8", newline="\n") as f:
        result.write_csv(f, _metadata("sweep", params))
    svgplot.heatmap(
        os.path.join(args.out, "heatmap.svg"), result.grid,
        list(rhos), list(leaks),
        f"self-oscillation ratio (n={params['n']}, trials={params['trials']})",
        "spectral radius", "leak rate", timestamp=_timestamp(args),
    )
    _write_echo(args.out, "sweep", params)
    print(f"sweep: {len(leaks)}x{len(rhos)} cells written to {args.out}")
    return EXIT_OK


def cmd_inject(args) -> int:
    overrides = {
        "populations": args.populations,
        "trials": args.trials,
        "tau": args.tau,
        "rho": args.rho,
        "leak": args.leak,
    }
    params = _resolve("inject-experiment", args, overrides)
    _prepare_out(args.out, ["config.echo.json", "injection.csv", "injection.svg"], args.force)
    try:
        rows = injection_ratio_experiment(
            params["populations"], params["trials"], params["tau"],
            params["rho"], params["leak"], params["seed"], jobs=args.jobs,
        )
    except InputError as exc:
        raise ConfigError(str(exc)) from exc

    with open(os.path.join(args.out, "injection.csv"), "w", encoding="utf-8",
              newline="\n") as f:
        write_injection_csv(f, rows, _metadata("inject-experiment", params))
    populations = [r.population for r in rows]
    svgplot.line_chart(
        os.path.join(args.out, "injection.svg"),
        [
            ("without ensemble", populations, [r.ratio_without for r in rows]),
            ("with ensemble", populations, [r.ratio_with for r in rows]),
        ],
        f"self-oscillation ratio vs population (trials={params['trials']})",
        "population", "ratio", timestamp=_timestamp(args),
    )
    _write_echo(args.out, "inject-experiment", params)
    print(f"inject-experiment: {len(rows)} populations written to {args.out}")
    return EXIT_OK


def _make_target(params):
    name = params["target"]
    if name not in _TARGET_DT:
        raise ConfigError(f"unknown target {name!r}")
    dt = params["dt"] if params["dt"] is not None else _TARGET_DT[name]
    tau = params["tau"] if params["tau"] is not None else _TARGET_TAU[name]
    if name == "sine":
        return gen_sinusoid(tau, dt, params["mode"], params["freq"])
    if name == "square":
        return gen_square(tau, dt)
    return gen_lorenz(tau, dt)


def cmd_reproduce(args) -> int:
    overrides = {
        "target": args.target,
        "mode": args.mode,
        "freq": args.freq,
        "dt": args.dt,
        "tau": args.tau,
        "n": args.n,
        "sub_count": args.sub,
        "sub_counts": args.sub_counts,
        "trials": args.trials,
        "coupling_scale": args.coupling_scale,
        "coupling_density": args.coupling_density,
        "leak_mu": args.leak_mu,
        "leak_sigma": args.leak_sigma,
        "rho": args.rho,
        "ridge_lambda": args.ridge_lambda,
        "washout": args.washout,
        "max_attempts": args.max_attempts,
        "standardize": args.standardize,
    }
    params = _resolve("reproduce", args, overrides)
    try:
        target = _make_target(params)
    except InputError as exc:
        raise ConfigError(str(exc)) from exc

    if params["sub_counts"]:
        return _reproduce_sweep(args, params, target)
    return _reproduce_single(args, params, target)


def _reproduce_single(args, params, target) -> int:
    files = ["config.echo.json", "nrmse.json", "overlay.svg"]
    _prepare_out(args.out, files, args.force)
    try:
        spec = TopologySpec(
            kind="weakly_coupled",
            n=params["n"],
            sub_count=params["sub_count"],
            coupling_scale=params["coupling_scale"],
            coupling_density=params["coupling_density"],
        )
        outcome = reproduce_waveform(
            spec, target, params["leak_mu"], params["leak_sigma"], params["rho"],
            params["ridge_lambda"], params["washout"], params["max_attempts"],
            params["seed"], params["standardize"],
        )
    except InputError as exc:
        raise ConfigError(str(exc)) from exc

    payload = {
        "metadata": _metadata("reproduce", params),
        "target": target.name,
    } | _json_safe(outcome.to_json_dict())
    _write_json(os.path.join(args.out, "nrmse.json"), payload)

    if outcome.oscillatory:
        _, _, prediction = rebuild_trial(
            spec, target, outcome.seed, params["leak_mu"], params["leak_sigma"],
            params["rho"], params["ridge_lambda"], params["washout"],
        )
        t = np.arange(target.length) * target.dt
        series = []
        for dim in range(target.dims):
            suffix = f"[{dim}]" if target.dims > 1 else ""
            series.append((f"target{suffix}", t, target.values[:, dim]))
            series.append((f"output{suffix}", t, prediction[:, dim]))
        svgplot.line_chart(
            os.path.join(args.out, "overlay.svg"), series,
            f"{target.name}: target vs readout output",
            "t", "value", timestamp=_timestamp(args),
        )
        status = f"oscillatory after {outcome.attempt_count} attempt(s), " \
                 f"mean train NRMSE {outcome.mean_nrmse():.4g}"
    else:
        status = f"no oscillatory reservoir within {outcome.attempt_count} attempts"
    _write_echo(args.out, "reproduce", params)
    print(f"reproduce[{target.name}]: {status}; outputs in {args.out}")
    return EXIT_OK


def _reproduce_sweep(args, params, target) -> int:
    _prepare_out(
        args.out,
        ["config.echo.json", "boxplot.csv", "trials.jsonl", "summary.json"],
        args.force,
    )
    try:
        per_count = subreservoir_count_outcomes(
            params["n"], params["sub_counts"], target, params["trials"],
            params["leak_mu"], params["leak_sigma"], params["rho"],
            params["ridge_lambda"], params["washout"], params["max_attempts"],
            params["coupling_scale"], params["coupling_density"],
            params["seed"], jobs=args.jobs,
        )
    except InputError as exc:
        raise ConfigError(str(exc)) from exc
    distributions = [distribution_from_outcomes(m, outs) for m, outs in per_count]

    with open(os.path.join(args.out, "boxplot.csv"), "w", encoding="utf-8",
              newline="\n") as f:
        write_boxplot_csv(f, distributions, _metadata("reproduce", params))
    with open(os.path.join(args.out, "trials.jsonl"), "w", encoding="utf-8",
              newline="\n") as f:
        write_outcomes_jsonl(f, per_count, _metadata("reproduce", params))
    summary = {
        "metadata": _metadata("reproduce", params),
        "target": target.name,
        "per_sub_count": [
            {
                "sub_count": d.sub_count,
                "oscillatory_trials": len(d.nrmse_values),
                "non_oscillatory_trials": d.non_oscillatory_count,
                "quartiles": _json_safe(list(d.quartiles())),
            }
            for d in distributions
        ],
    }
    _write_json(os.path.join(args.out, "summary.json"), summary)
    _write_echo(args.out, "reproduce", params)
    print(f"reproduce[{target.name}]: sweep over {params['sub_counts']} written to {args.out}")
    return EXIT_OK


def cmd_topology_demo(args) -> int:
    overrides = {
        "n": args.n,
        "rho": args.rho,
        "tau": args.tau,
    }
    params = _resolve("topology-demo", args, overrides)
    n, rho, tau, seed = params["n"], params["rho"], params["tau"], params["seed"]
    if rho <= 0:
        raise ConfigError(f"rho must be positive, got {rho}")
    if tau < 100:
        raise ConfigError("tau must be at least 100 (the classifier window)")

    kinds = ("dense", "sparse", "block_diagonal", "weakly_coupled")
    files = ["config.echo.json"]
    for kind in kinds:
        files += [f"{kind}_trajectory.csv", f"{kind}_report.json", f"{kind}_traces.svg"]
    _prepare_out(args.out, files, args.force)

    sub_count = max(1, min(4, n // 4))
    for kind_index, kind in enumerate(kinds):
        spec = TopologySpec(kind=kind, n=n, sub_count=sub_count,
                            seed=derive_seed(seed, kind_index))
        W = build_weights(spec, rho)
        # block layouts get per-unit leak so the sub-reservoirs differ in pace
        if kind in ("block_diagonal", "weakly_coupled"):
            leak = sample_leak_vector(n, 0.6, 0.1, derive_seed(spec.seed, _ROLE_LEAK))
        else:
            leak = 0.5
        trajectory = Reservoir(W, leak, init_state(n, derive_seed(spec.seed, _ROLE_STATE))).run(tau)
        report = classify_trajectory(trajectory)
        trajectory.to_csv(os.path.join(args.out, f"{kind}_trajectory.csv"))
        _write_json(
            os.path.join(args.out, f"{kind}_report.json"),
            {"metadata": _metadata("topology-demo", params), "kind": kind}
            | report.to_json_dict(),
        )
        t = np.arange(trajectory.steps)
        count = min(5, trajectory.n)
        svgplot.line_chart(
            os.path.join(args.out, f"{kind}_traces.svg"),
            [(f"x{i}", t, trajectory.unit(i)) for i in range(count)],
            f"{kind}: unit traces", "step", "state", timestamp=_timestamp(args),
        )
    _write_echo(args.out, "topology-demo", params)
    print(f"topology-demo: {len(kinds)} topologies written to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"soesn: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"soesn: invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"soesn: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"soesn: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
