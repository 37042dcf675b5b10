"""Weight-matrix construction: dense and sparse random reservoirs, block
(sub-reservoir) layouts with optional weak inter-block coupling, and the
calibrated two-neuron oscillator ensemble that can be spliced into any of
them to seed oscillation."""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, InputError
from .numerics import scale_to_spectral_radius
from .oscillation import classify_trajectory
from .reservoir import Reservoir, init_state

VALID_KINDS = ("dense", "sparse", "block_diagonal", "weakly_coupled")

# Internal seed for the standalone oscillation check of candidate ensembles.
_ENSEMBLE_CHECK_SEED = 1912


@dataclass
class TopologySpec:
    """Declarative recipe for a reservoir weight matrix.

    `density` applies to the sparse kind, `sub_count` and the coupling fields
    to the block kinds. Population is split into near-equal contiguous blocks
    (sizes differ by at most one when `n` is not divisible by `sub_count`).
    """

    kind: str = "dense"
    n: int = 100
    density: float = 0.1
    sub_count: int = 1
    coupling_scale: float = 0.05
    coupling_density: float = 0.05
    inject_ensemble: bool = False
    seed: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.kind not in VALID_KINDS:
            raise InputError(f"unknown topology kind {self.kind!r}; choose from {VALID_KINDS}")
        if self.n < 1:
            raise InputError("population n must be at least 1")
        if not 0.0 < self.density <= 1.0:
            raise InputError(f"density must lie in (0, 1], got {self.density}")
        if not 1 <= self.sub_count <= self.n:
            raise InputError(f"sub_count must lie in [1, n], got {self.sub_count}")
        if self.coupling_scale < 0.0:
            raise InputError("coupling_scale must be non-negative")
        if not 0.0 <= self.coupling_density <= 1.0:
            raise InputError(f"coupling_density must lie in [0, 1], got {self.coupling_density}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "density": self.density,
            "sub_count": self.sub_count,
            "coupling_scale": self.coupling_scale,
            "coupling_density": self.coupling_density,
            "inject_ensemble": self.inject_ensemble,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TopologySpec":
        known = {
            "kind", "n", "density", "sub_count", "coupling_scale",
            "coupling_density", "inject_ensemble", "seed",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown topology fields: {sorted(unknown)}")
        return cls(**data)

    def with_seed(self, seed: int) -> "TopologySpec":
        return replace(self, seed=seed)


def block_sizes(n: int, sub_count: int) -> list[int]:
    """Near-equal contiguous block sizes; the first n % sub_count blocks take
    the extra unit."""
    if not 1 <= sub_count <= n:
        raise InputError(f"sub_count must lie in [1, n], got {sub_count} for n={n}")
    base, extra = divmod(n, sub_count)
    return [base + 1] * extra + [base] * (sub_count - extra)


def build_dense(n: int, seed: int) -> np.ndarray:
    """Fully connected weights, entries i.i.d. uniform on [-0.5, 0.5]."""
    if n < 1:
        raise InputError("population n must be at least 1")
    rng = np.random.default_rng(seed)
    return rng.uniform(-0.5, 0.5, size=(n, n))


def build_sparse(n: int, density: float, seed: int) -> np.ndarray:
    """Each entry independently nonzero with probability `density`, nonzero
    values uniform on [-0.5, 0.5]."""
    if n < 1:
        raise InputError("population n must be at least 1")
    if not 0.0 < density <= 1.0:
        raise InputError(f"density must lie in (0, 1], got {density}")
    rng = np.random.default_rng(seed)
    mask = rng.random(size=(n, n)) < density
    values = rng.uniform(-0.5, 0.5, size=(n, n))
    return np.where(mask, values, 0.0)


def _fill_diagonal_blocks(W: np.ndarray, sizes: list[int], rng) -> None:
    offset = 0
    for size in sizes:
        W[offset : offset + size, offset : offset + size] = rng.uniform(
            -0.5, 0.5, size=(size, size)
        )
        offset += size


def build_block_diagonal(n: int, sub_count: int, seed: int) -> np.ndarray:
    """Independent dense diagonal blocks, zero everywhere else.

    Blocks come back unscaled; callers rescale each one to the working
    spectral radius (see build_weights)."""
    sizes = block_sizes(n, sub_count)
    rng = np.random.default_rng(seed)
    W = np.zeros((n, n))
    _fill_diagonal_blocks(W, sizes, rng)
    return W


def build_weakly_coupled(
    n: int,
    sub_count: int,
    coupling_scale: float,
    coupling_density: float,
    seed: int,
) -> np.ndarray:
    """Diagonal blocks as in build_block_diagonal plus sparse weak links
    between blocks: off-block entries nonzero with probability
    `coupling_density`, values uniform on [-0.5, 0.5] times `coupling_scale`.

    The diagonal blocks are drawn first from the same stream, so for a given
    seed they match build_block_diagonal exactly.
    """
    if coupling_scale < 0.0:
        raise InputError("coupling_scale must be non-negative")
    if not 0.0 <= coupling_density <= 1.0:
        raise InputError(f"coupling_density must lie in [0, 1], got {coupling_density}")
    sizes = block_sizes(n, sub_count)
    rng = np.random.default_rng(seed)
    W = np.zeros((n, n))
    _fill_diagonal_blocks(W, sizes, rng)

    offsets = np.concatenate([[0], np.cumsum(sizes)])
    for i in range(sub_count):
        for j in range(sub_count):
            if i == j:
                continue
            rows = slice(offsets[i], offsets[i + 1])
            cols = slice(offsets[j], offsets[j + 1])
            shape = (sizes[i], sizes[j])
            mask = rng.random(size=shape) < coupling_density
            values = rng.uniform(-0.5, 0.5, size=shape) * coupling_scale
            W[rows, cols] = np.where(mask, values, 0.0)
    return W


@dataclass(frozen=True)
class EnsembleSpec:
    """A small sub-network verified at construction to oscillate on its own
    (1000 steps at leak 0.5). The 2x2 case must carry three excitatory and
    one inhibitory synapse."""

    size: int
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (self.size, self.size):
            raise InputError(
                f"ensemble weights must be {self.size}x{self.size}, got {weights.shape}"
            )
        object.__setattr__(self, "weights", weights)
        if self.size == 2:
            positive = int(np.sum(weights > 0))
            negative = int(np.sum(weights < 0))
            if (positive, negative) != (3, 1):
                raise InputError(
                    "a 2x2 ensemble needs exactly 3 positive and 1 negative entry, "
                    f"got {positive} positive / {negative} negative"
                )
        reservoir = Reservoir(
            weights, leak=0.5, state=init_state(self.size, _ENSEMBLE_CHECK_SEED)
        )
        report = classify_trajectory(reservoir.run(1000))
        if not report.reservoir_is_self_oscillatory:
            raise InputError("candidate ensemble does not oscillate standalone")


def two_neuron_ensemble() -> EnsembleSpec:
    """The canonical reciprocal pair: each unit excites itself, one excites
    the other and is inhibited back. The unscaled matrix has eigenvalues
    1 +/- i, so the linearization rotates instead of settling; scaling to
    radius 1.25 matches the working point used everywhere else."""
    base = np.array([[1.0, 1.0], [-1.0, 1.0]])
    return EnsembleSpec(size=2, weights=scale_to_spectral_radius(base, 1.25))


def inject_ensemble(W: np.ndarray, ensemble: EnsembleSpec) -> np.ndarray:
    """Replace the leading block of W with the ensemble's weights; rows and
    columns coupling the ensemble to the rest are preserved."""
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise InputError(f"expected a square matrix, got shape {W.shape}")
    if W.shape[0] < ensemble.size:
        raise InputError(
            f"matrix side {W.shape[0]} is smaller than the ensemble ({ensemble.size})"
        )
    out = W.copy()
    out[: ensemble.size, : ensemble.size] = ensemble.weights
    return out


def sample_leak_vector(n: int, mu: float, sigma: float, seed: int) -> np.ndarray:
    """Per-unit leak rates ~ N(mu, sigma), clipped to [0.05, 1.0] so the
    update keeps its convex-combination form."""
    if n < 1:
        raise InputError("need at least one unit")
    if sigma < 0:
        raise InputError("sigma must be non-negative")
    rng = np.random.default_rng(seed)
    return np.clip(rng.normal(mu, sigma, size=n), 0.05, 1.0)


def build_weights(spec: TopologySpec, rho: float) -> np.ndarray:
    """Realize a TopologySpec as a weight matrix conditioned for a target
    spectral radius.

    Dense and sparse matrices are rescaled as a whole. Block layouts have
    each diagonal block rescaled independently -- the per-block radius is
    what governs each sub-oscillator -- and the weak coupling is left
    untouched. An injected ensemble is spliced in last so it keeps its own
    calibrated weights.
    """
    spec.validate()
    if rho <= 0:
        raise InputError(f"target spectral radius must be positive, got {rho}")

    if spec.kind == "dense":
        W = scale_to_spectral_radius(build_dense(spec.n, spec.seed), rho)
    elif spec.kind == "sparse":
        W = scale_to_spectral_radius(build_sparse(spec.n, spec.density, spec.seed), rho)
    else:
        if spec.kind == "block_diagonal":
            W = build_block_diagonal(spec.n, spec.sub_count, spec.seed)
        else:
            W = build_weakly_coupled(
                spec.n,
                spec.sub_count,
                spec.coupling_scale,
                spec.coupling_density,
                spec.seed,
            )
        offset = 0
        for size in block_sizes(spec.n, spec.sub_count):
            block = slice(offset, offset + size)
            W[block, block] = scale_to_spectral_radius(W[block, block], rho)
            offset += size

    if spec.inject_ensemble:
        W = inject_ensemble(W, two_neuron_ensemble())
    return W
