"""The autonomous dynamical core: a leaky-tanh recurrent network driven only
by its own state.

Per step, elementwise over units:

    x'_i = (1 - leak_i) * x_i + leak_i * tanh((W @ x)_i)

There is no input layer and no output feedback. Whether activity damps out
or settles into sustained oscillation is decided entirely by the weight
matrix and the leak vector. Because each update is a convex mix of a value
already in [-1, 1] with a tanh output, states stay in [-1, 1] forever once
started inside it.
"""

import io

import numpy as np

from .errors import DimensionError, InputError, NumericError

_REDRAW_CAP = 64


def init_state(n: int, seed: int = 0, rng=None) -> np.ndarray:
    """Initial unit states, i.i.d. uniform on [-0.5, 0.5].

    An all-(near-)zero draw is rejected and redrawn: zero is a fixed point of
    the update, so such a state could never kick-start oscillation. Pass
    `rng` to draw from an existing generator instead of building one from
    `seed` (tests use this to force the redraw path).
    """
    if n < 1:
        raise InputError("need at least one unit")
    if rng is None:
        rng = np.random.default_rng(seed)
    for _ in range(_REDRAW_CAP):
        state = rng.uniform(-0.5, 0.5, size=n)
        if np.max(np.abs(state)) >= 1e-6:
            return state
    raise NumericError("initial state kept drawing as (near) zero")


class Reservoir:
    """Mutable state machine; single writer, but distinct instances are
    independent and can be advanced in parallel."""

    def __init__(self, W, leak, state):
        W = np.asarray(W, dtype=float)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise DimensionError(f"weight matrix must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise InputError("weight matrix entries must be finite")
        n = W.shape[0]

        if np.isscalar(leak):
            leak = np.full(n, float(leak))
        leak = np.asarray(leak, dtype=float)
        if leak.shape != (n,):
            raise DimensionError(f"leak vector must have shape ({n},), got {leak.shape}")
        if not np.all((leak > 0.0) & (leak <= 1.0)):
            raise InputError("every leak value must lie in (0, 1]")

        state = np.asarray(state, dtype=float)
        if state.shape != (n,):
            raise DimensionError(f"state must have shape ({n},), got {state.shape}")
        if not np.all(np.isfinite(state)) or np.max(np.abs(state)) > 1.0:
            raise InputError("state values must be finite and within [-1, 1]")

        self.W = W
        self.leak = leak
        self.state = state.copy()
        self.step_count = 0

    @property
    def n(self) -> int:
        return self.W.shape[0]

    def step(self) -> "Reservoir":
        """Advance the state one tick."""
        x = self.state
        new = (1.0 - self.leak) * x + self.leak * np.tanh(self.W @ x)
        if not np.all(np.isfinite(new)):
            unit = int(np.flatnonzero(~np.isfinite(new))[0])
            raise NumericError(
                f"non-finite state at unit {unit} on step {self.step_count + 1}"
            )
        self.state = new
        self.step_count += 1
        return self

    def run(self, tau: int) -> "StateTrajectory":
        """Advance `tau` ticks, recording every state including the initial one.

        The reservoir is left at the final state, so consecutive runs
        concatenate: run(a) then run(b) visits the same states as run(a+b).
        """
        if tau < 1:
            raise InputError("tau must be at least 1")
        rows = np.empty((tau + 1, self.n))
        rows[0] = self.state
        for t in range(tau):
            self.step()
            rows[t + 1] = self.state
        return StateTrajectory(rows)


class StateTrajectory:
    """Time-major, immutable record of unit states; row t is the state after
    t steps (row 0 is the initial state)."""

    def __init__(self, rows):
        rows = np.array(rows, dtype=float)
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 1:
            raise DimensionError(f"trajectory must be 2-D and non-empty, got shape {rows.shape}")
        if not np.all(np.isfinite(rows)):
            raise InputError("trajectory values must be finite")
        if np.max(np.abs(rows)) > 1.0 + 1e-12:
            raise InputError("trajectory values must lie within [-1, 1]")
        rows.setflags(write=False)
        self.rows = rows

    @property
    def steps(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def unit(self, i: int) -> np.ndarray:
        """The full time series of one unit."""
        return self.rows[:, i]

    def to_csv(self, path) -> None:
        """Write `t,x0,x1,...` rows with 17-significant-digit floats
        (lossless round trip)."""
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            self.write_csv(f)

    def write_csv(self, f) -> None:
        f.write("t," + ",".join(f"x{i}" for i in range(self.n)) + "\n")
        for t, row in enumerate(self.rows):
            f.write(str(t) + "," + ",".join(f"{v:.17g}" for v in row) + "\n")

    @classmethod
    def from_csv(cls, path) -> "StateTrajectory":
        with open(path, "r", encoding="utf-8") as f:
            return cls.read_csv(f)

    @classmethod
    def read_csv(cls, f) -> "StateTrajectory":
        if isinstance(f, str):
            f = io.StringIO(f)
        header = f.readline().strip().split(",")
        if not header or header[0] != "t" or len(header) < 2:
            raise InputError("not a trajectory CSV: header must be t,x0,x1,...")
        rows = []
        for line in f:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(header):
                raise InputError(f"row has {len(parts)} fields, expected {len(header)}")
            rows.append([float(v) for v in parts[1:]])
        return cls(np.array(rows))
