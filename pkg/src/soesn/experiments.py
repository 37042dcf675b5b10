"""Experiment harness: oscillation-ratio sweeps over leak and spectral
radius, ensemble-injection comparisons, target-signal generation, and
waveform-reproduction trials.

Every experiment is a deterministic function of its parameters plus a base
seed. Per-trial seeds come from seeding.derive_seed, so any individual trial
can be reproduced in isolation and results never depend on worker
scheduling: with jobs > 1 the trials are farmed out to a process pool but
aggregated by trial index, giving bit-identical output at any parallelism.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError
from .numerics import scale_to_spectral_radius
from .oscillation import classify_trajectory
from .readout import ReadoutModel, predict, train_ridge
from .reservoir import Reservoir, StateTrajectory, init_state
from .seeding import derive_seed
from .topology import (
    TopologySpec,
    build_dense,
    build_weights,
    inject_ensemble,
    sample_leak_vector,
    two_neuron_ensemble,
)

# Sub-seed roles, mixed into a trial seed to decorrelate its random draws.
_ROLE_WEIGHTS = 0
_ROLE_STATE = 1
_ROLE_LEAK = 2


def _map_trials(worker, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks, chunksize=chunk))


def write_metadata(f, metadata: dict) -> None:
    """Prefix an output file with `# key=value` lines."""
    for key, value in metadata.items():
        f.write(f"# {key}={value}\n")


# ---------------------------------------------------------------------------
# Leak x spectral-radius sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    """Fraction of self-oscillatory reservoirs per (leak, rho) cell."""

    grid: np.ndarray
    trials_per_cell: int
    leak_values: tuple[float, ...]
    rho_values: tuple[float, ...]
    base_seed: int

    def ratio(self, leak_index: int, rho_index: int) -> float:
        return float(self.grid[leak_index, rho_index])

    def write_csv(self, f, metadata: dict | None = None) -> None:
        if metadata:
            write_metadata(f, metadata)
        f.write("leak,rho,ratio,trials\n")
        for li, leak in enumerate(self.leak_values):
            for ri, rho in enumerate(self.rho_values):
                ratio = repr(float(self.grid[li, ri]))
                f.write(f"{leak!r},{rho!r},{ratio},{self.trials_per_cell}\n")


def _sweep_trial(task) -> bool:
    n, tau, leak, rho, seed, li, ri, t = task
    try:
        W = scale_to_spectral_radius(build_dense(n, derive_seed(seed, _ROLE_WEIGHTS)), rho)
        state = init_state(n, derive_seed(seed, _ROLE_STATE))
        trajectory = Reservoir(W, leak, state).run(tau)
        return bool(classify_trajectory(trajectory).reservoir_is_self_oscillatory)
    except (InputError, NumericError) as exc:
        raise NumericError(
            f"sweep cell (leak={leak}, rho={rho}) trial {t} failed: {exc}"
        ) from exc


def sweep_heatmap(
    leak_values,
    rho_values,
    trials: int,
    n: int,
    tau: int = 1000,
    base_seed: int = 0,
    jobs: int = 1,
) -> SweepResult:
    """Monte-Carlo oscillation ratio over a (leak, spectral radius) grid.

    Each cell builds `trials` dense reservoirs with fresh derived seeds,
    scales them to the cell's radius, runs them for `tau` steps, and counts
    the fraction classified self-oscillatory.
    """
    leak_values = tuple(float(a) for a in leak_values)
    rho_values = tuple(float(r) for r in rho_values)
    if trials < 1:
        raise InputError("trials must be at least 1")
    if not leak_values or not rho_values:
        raise InputError("need at least one leak value and one rho value")
    if any(not 0.0 < a <= 1.0 for a in leak_values):
        raise InputError("leak values must lie in (0, 1]")
    if any(r <= 0.0 for r in rho_values):
        raise InputError("rho values must be positive")

    tasks = [
        (n, tau, a, r, derive_seed(base_seed, li, ri, t), li, ri, t)
        for li, a in enumerate(leak_values)
        for ri, r in enumerate(rho_values)
        for t in range(trials)
    ]
    flags = _map_trials(_sweep_trial, tasks, jobs)

    grid = np.empty((len(leak_values), len(rho_values)))
    index = 0
    for li in range(len(leak_values)):
        for ri in range(len(rho_values)):
            cell = flags[index : index + trials]
            grid[li, ri] = sum(cell) / trials
            index += trials
    return SweepResult(grid, trials, leak_values, rho_values, base_seed)


# ---------------------------------------------------------------------------
# Ensemble-injection comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PopulationComparison:
    population: int
    ratio_without: float
    ratio_with: float

    @property
    def gap(self) -> float:
        return self.ratio_with - self.ratio_without


def write_injection_csv(f, rows, metadata: dict | None = None) -> None:
    if metadata:
        write_metadata(f, metadata)
    f.write("population,ratio_without,ratio_with\n")
    for row in rows:
        f.write(f"{row.population},{row.ratio_without!r},{row.ratio_with!r}\n")


def _injection_trial(task):
    n, tau, rho, leak, seed, ensemble = task
    W = scale_to_spectral_radius(build_dense(n, derive_seed(seed, _ROLE_WEIGHTS)), rho)
    state = init_state(n, derive_seed(seed, _ROLE_STATE))
    plain = classify_trajectory(Reservoir(W, leak, state).run(tau))
    seeded = classify_trajectory(Reservoir(inject_ensemble(W, ensemble), leak, state).run(tau))
    return (
        bool(plain.reservoir_is_self_oscillatory),
        bool(seeded.reservoir_is_self_oscillatory),
    )


def injection_ratio_experiment(
    populations,
    trials: int,
    tau: int = 1000,
    rho: float = 1.25,
    leak: float = 0.5,
    base_seed: int = 0,
    jobs: int = 1,
) -> list[PopulationComparison]:
    """Oscillation ratio with and without the calibrated two-neuron ensemble
    spliced into the reservoir, over a range of populations.

    The arms are paired: each trial uses the same scaled weight matrix and
    the same initial state, differing only in the injected leading block.
    The matrix is scaled before injection, so the ensemble keeps its own
    calibrated weights.
    """
    populations = [int(p) for p in populations]
    if trials < 1:
        raise InputError("trials must be at least 1")
    if any(p < 2 for p in populations):
        raise InputError("every population must be at least 2")
    ensemble = two_neuron_ensemble()

    tasks = [
        (p, tau, rho, leak, derive_seed(base_seed, pi, t), ensemble)
        for pi, p in enumerate(populations)
        for t in range(trials)
    ]
    outcomes = _map_trials(_injection_trial, tasks, jobs)

    rows = []
    index = 0
    for p in populations:
        cell = outcomes[index : index + trials]
        rows.append(
            PopulationComparison(
                population=p,
                ratio_without=sum(w for w, _ in cell) / trials,
                ratio_with=sum(i for _, i in cell) / trials,
            )
        )
        index += trials
    return rows


# ---------------------------------------------------------------------------
# Target signals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TargetSignal:
    """A named waveform sampled on a fixed grid; values are (T, L)."""

    name: str
    dt: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] < 2:
            raise InputError("target needs a (T, L) array with T >= 2")
        if not np.all(np.isfinite(values)):
            raise InputError("target values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dims(self) -> int:
        return self.values.shape[1]


def gen_sinusoid(
    tau: int, dt: float = 1.0, mode: str = "pure_sine", freq: float = 0.05
) -> TargetSignal:
    """Sinusoid target with tau+1 samples at t = k*dt.

    `pure_sine` is sin(2*pi*freq*t). `literal_ode` integrates
    x' = 2*(1 + cos t) exactly, giving the ramp-plus-sine x = 2t + 2 sin t
    with x(0) = 0; it is monotone and unbounded, kept for fidelity rather
    than as a practical target for a bounded readout.
    """
    if tau < 2:
        raise InputError("tau must be at least 2")
    t = np.arange(tau + 1) * dt
    if mode == "literal_ode":
        values = 2.0 * t + 2.0 * np.sin(t)
        name = "sinusoid_ode"
    elif mode == "pure_sine":
        values = np.sin(2.0 * np.pi * freq * t)
        name = "sine"
    else:
        raise InputError(f"unknown sinusoid mode {mode!r}")
    return TargetSignal(name=name, dt=dt, values=values)


def gen_square(tau: int, dt: float = 0.01) -> TargetSignal:
    """Square wave sgn(sin(10*pi*t)) with tau+1 samples at t = k*dt.

    Samples landing on an exact half-period give sgn(0) = 0; the sine is
    snapped to zero below 1e-9 so those lattice points survive floating-
    point rounding of pi.
    """
    if tau < 2:
        raise InputError("tau must be at least 2")
    t = np.arange(tau + 1) * dt
    s = np.sin(10.0 * np.pi * t)
    values = np.sign(s)
    values[np.abs(s) < 1e-9] = 0.0
    return TargetSignal(name="square", dt=dt, values=values)


def gen_lorenz(
    tau: int,
    dt: float = 0.01,
    x0=(0.0, 1.0, 1.05),
    sigma: float = 10.0,
    alpha: float = 28.0,
    beta: float = 2.667,
) -> TargetSignal:
    """Lorenz system integrated with fixed-step classical RK4; returns tau+1
    samples of (x, y, z)."""
    if tau < 2:
        raise InputError("tau must be at least 2")
    if dt <= 0:
        raise InputError("dt must be positive")
    state = np.asarray(x0, dtype=float)
    if state.shape != (3,):
        raise InputError("x0 must have three components")

    def deriv(s):
        x, y, z = s
        return np.array([sigma * (y - x), x * (alpha - z) - y, x * y - beta * z])

    out = np.empty((tau + 1, 3))
    out[0] = state
    # divergence shows up as inf/nan and is reported explicitly below
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(tau):
            k1 = deriv(state)
            k2 = deriv(state + 0.5 * dt * k1)
            k3 = deriv(state + 0.5 * dt * k2)
            k4 = deriv(state + dt * k3)
            state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(state)):
                raise NumericError(f"Lorenz integration diverged at step {k + 1}")
            out[k + 1] = state
    return TargetSignal(name="lorenz", dt=dt, values=out)


# ---------------------------------------------------------------------------
# Waveform reproduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one reproduction trial; train_nrmse is present only when an
    oscillatory reservoir was found within the attempt budget."""

    attempt_count: int
    oscillatory: bool
    train_nrmse: tuple[float, ...] | None
    seed: int

    def mean_nrmse(self) -> float:
        if self.train_nrmse is None:
            return math.nan
        return float(np.mean(self.train_nrmse))

    def to_json_dict(self) -> dict:
        nrmse_values = None
        if self.train_nrmse is not None:
            nrmse_values = [None if math.isnan(v) else v for v in self.train_nrmse]
        return {
            "attempt_count": self.attempt_count,
            "oscillatory": self.oscillatory,
            "train_nrmse": nrmse_values,
            "seed": self.seed,
        }


def _attempt(spec: TopologySpec, tau, leak_mu, leak_sigma, rho, attempt_seed):
    W = build_weights(spec.with_seed(derive_seed(attempt_seed, _ROLE_WEIGHTS)), rho)
    leak = sample_leak_vector(spec.n, leak_mu, leak_sigma, derive_seed(attempt_seed, _ROLE_LEAK))
    state = init_state(spec.n, derive_seed(attempt_seed, _ROLE_STATE))
    trajectory = Reservoir(W, leak, state).run(tau)
    return trajectory, classify_trajectory(trajectory)


def _standardized(values: np.ndarray) -> np.ndarray:
    mean = values.mean(axis=0)
    sd = values.std(axis=0)
    sd = np.where(sd == 0.0, 1.0, sd)
    return (values - mean) / sd


def reproduce_waveform(
    spec: TopologySpec,
    target: TargetSignal,
    leak_mu: float = 0.6,
    leak_sigma: float = 0.1,
    rho: float = 1.25,
    ridge_lambda: float = 1e-8,
    washout: int = 100,
    max_attempts: int = 10,
    base_seed: int = 0,
    standardize: bool = False,
) -> TrialOutcome:
    """Build reservoirs from `spec` until one is self-oscillatory (or the
    attempt budget runs out), then train the readout on the recorded states
    against the target and report per-dimension training NRMSE.

    Exhausting the attempts is a result, not an error: the outcome comes
    back with oscillatory=False. `standardize` optionally rescales each
    target dimension to zero mean / unit variance before the fit (pure
    conditioning; NRMSE is scale-free either way).
    """
    if target.length < washout + 2:
        raise InputError(
            f"target length {target.length} too short for washout {washout}"
        )
    tau = target.length - 1
    last_seed = base_seed
    for attempt in range(max_attempts):
        attempt_seed = derive_seed(base_seed, attempt)
        last_seed = attempt_seed
        trajectory, report = _attempt(spec, tau, leak_mu, leak_sigma, rho, attempt_seed)
        if report.reservoir_is_self_oscillatory:
            values = _standardized(target.values) if standardize else target.values
            model = train_ridge(trajectory.rows, values, ridge_lambda, washout)
            return TrialOutcome(
                attempt_count=attempt + 1,
                oscillatory=True,
                train_nrmse=tuple(float(v) for v in model.train_nrmse),
                seed=attempt_seed,
            )
    return TrialOutcome(
        attempt_count=max_attempts, oscillatory=False, train_nrmse=None, seed=last_seed
    )


def rebuild_trial(
    spec: TopologySpec,
    target: TargetSignal,
    attempt_seed: int,
    leak_mu: float = 0.6,
    leak_sigma: float = 0.1,
    rho: float = 1.25,
    ridge_lambda: float = 1e-8,
    washout: int = 100,
) -> tuple[StateTrajectory, ReadoutModel, np.ndarray]:
    """Reconstruct a reproduction attempt from its seed, returning the
    trajectory, the trained model, and the full-length prediction (used for
    target-versus-output plots)."""
    tau = target.length - 1
    trajectory, _ = _attempt(spec, tau, leak_mu, leak_sigma, rho, attempt_seed)
    model = train_ridge(trajectory.rows, target.values, ridge_lambda, washout)
    return trajectory, model, predict(model, trajectory.rows)


def _reproduce_task(task) -> TrialOutcome:
    (spec, target, leak_mu, leak_sigma, rho, ridge_lambda, washout,
     max_attempts, seed) = task
    return reproduce_waveform(
        spec, target, leak_mu, leak_sigma, rho, ridge_lambda, washout,
        max_attempts, seed,
    )


def reproduce_trials(
    spec: TopologySpec,
    target: TargetSignal,
    trials: int,
    leak_mu: float = 0.6,
    leak_sigma: float = 0.1,
    rho: float = 1.25,
    ridge_lambda: float = 1e-8,
    washout: int = 100,
    max_attempts: int = 10,
    base_seed: int = 0,
    jobs: int = 1,
) -> list[TrialOutcome]:
    """Independent reproduction trials with per-trial derived seeds."""
    if trials < 1:
        raise InputError("trials must be at least 1")
    tasks = [
        (spec, target, leak_mu, leak_sigma, rho, ridge_lambda, washout,
         max_attempts, derive_seed(base_seed, t))
        for t in range(trials)
    ]
    return _map_trials(_reproduce_task, tasks, jobs)


@dataclass(frozen=True)
class SubCountDistribution:
    """NRMSE distribution (mean over target dimensions per trial) among the
    oscillatory trials at one sub-reservoir count."""

    sub_count: int
    nrmse_values: tuple[float, ...]
    non_oscillatory_count: int

    def quartiles(self) -> tuple[float, float, float]:
        if not self.nrmse_values:
            return (math.nan, math.nan, math.nan)
        q1, q2, q3 = np.percentile(self.nrmse_values, [25.0, 50.0, 75.0])
        return (float(q1), float(q2), float(q3))

    @property
    def median(self) -> float:
        return self.quartiles()[1]


def distribution_from_outcomes(sub_count: int, outcomes) -> SubCountDistribution:
    return SubCountDistribution(
        sub_count=sub_count,
        nrmse_values=tuple(o.mean_nrmse() for o in outcomes if o.oscillatory),
        non_oscillatory_count=sum(1 for o in outcomes if not o.oscillatory),
    )


def subreservoir_count_outcomes(
    n: int,
    sub_counts,
    target: TargetSignal,
    trials: int,
    leak_mu: float = 0.6,
    leak_sigma: float = 0.1,
    rho: float = 1.25,
    ridge_lambda: float = 1e-8,
    washout: int = 100,
    max_attempts: int = 10,
    coupling_scale: float = 0.05,
    coupling_density: float = 0.05,
    base_seed: int = 0,
    jobs: int = 1,
) -> list[tuple[int, list[TrialOutcome]]]:
    """Raw reproduction outcomes per sub-reservoir count, using the weakly
    coupled topology throughout (a single block at sub_count=1 is the dense
    baseline)."""
    results = []
    for mi, m in enumerate(sub_counts):
        spec = TopologySpec(
            kind="weakly_coupled",
            n=n,
            sub_count=int(m),
            coupling_scale=coupling_scale,
            coupling_density=coupling_density,
        )
        outcomes = reproduce_trials(
            spec, target, trials, leak_mu, leak_sigma, rho, ridge_lambda,
            washout, max_attempts, derive_seed(base_seed, mi), jobs,
        )
        results.append((int(m), outcomes))
    return results


def subreservoir_count_sweep(
    n: int,
    sub_counts,
    target: TargetSignal,
    trials: int,
    leak_mu: float = 0.6,
    leak_sigma: float = 0.1,
    rho: float = 1.25,
    ridge_lambda: float = 1e-8,
    washout: int = 100,
    max_attempts: int = 10,
    coupling_scale: float = 0.05,
    coupling_density: float = 0.05,
    base_seed: int = 0,
    jobs: int = 1,
) -> list[SubCountDistribution]:
    """NRMSE distribution versus the number of sub-reservoirs at a fixed
    population (summary view of subreservoir_count_outcomes)."""
    return [
        distribution_from_outcomes(m, outcomes)
        for m, outcomes in subreservoir_count_outcomes(
            n, sub_counts, target, trials, leak_mu, leak_sigma, rho,
            ridge_lambda, washout, max_attempts, coupling_scale,
            coupling_density, base_seed, jobs,
        )
    ]


def write_boxplot_csv(f, distributions, metadata: dict | None = None) -> None:
    """Raw per-trial rows backing the sub-reservoir-count boxplot."""
    if metadata:
        write_metadata(f, metadata)
    f.write("sub_count,trial,oscillatory,nrmse\n")
    for dist in distributions:
        trial = 0
        for value in dist.nrmse_values:
            f.write(f"{dist.sub_count},{trial},true,{value!r}\n")
            trial += 1
        for _ in range(dist.non_oscillatory_count):
            f.write(f"{dist.sub_count},{trial},false,\n")
            trial += 1


def write_outcomes_jsonl(f, per_count_outcomes, metadata: dict | None = None) -> None:
    """One JSON object per trial outcome, preceded by a metadata line."""
    if metadata is not None:
        f.write(json.dumps({"metadata": metadata}, sort_keys=True) + "\n")
    for sub_count, outcomes in per_count_outcomes:
        for trial, outcome in enumerate(outcomes):
            record = {"sub_count": sub_count, "trial": trial} | outcome.to_json_dict()
            f.write(json.dumps(record, sort_keys=True) + "\n")
