"""Generative engine for attributed-network stream experiments.

The default configuration describes a weekly communication network of 50
students: edge attributes are the age difference between the endpoints and
an indicator for edges touching one of five association members. The
coefficients evolve as a stable AR(1) with a fixed point at [-2, 0.1, 0],
and networks are sampled edge-independently from the configured family.

Abrupt changes are injected by adding a +/- delta*sigma_i offset to one
state coordinate at the change time and every step after it (a sustained
shift: under a contracting transition a one-step pulse would decay
geometrically and leave next to nothing to detect).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .errors import NonStationaryError
from .glm import EdgeFamily, mean_response
from .filtering import StateSpaceModel
from .network import AttributeMatrix, NetworkSnapshot, NetworkStream, edge_pairs


def default_transition_model(family: EdgeFamily) -> StateSpaceModel:
    """Stable AR(1) transition used by the stock student-network scenario."""
    return StateSpaceModel(
        F=0.7 * np.eye(3),
        xi=np.array([-0.6, 0.03, 0.0]),
        Q=np.diag([0.01, 0.0001, 0.05]),
        family=family,
    )


@dataclass(frozen=True, eq=False)
class SimulationConfig:
    """Full generative description of one stream."""

    n: int = 50
    family: EdgeFamily = EdgeFamily.BERNOULLI
    beta0: np.ndarray = (-1.0, 0.05, 0.0)
    model: StateSpaceModel | None = None
    length: int = 100
    member_count: int = 5
    age_range: tuple[int, int] = (20, 40)
    directed: bool = True
    seed: int | tuple = 0

    def __post_init__(self):
        model = self.model or default_transition_model(self.family)
        beta0 = np.array(self.beta0, dtype=float)
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if not 0 <= self.member_count <= self.n:
            raise ValueError("member_count must be between 0 and n")
        if self.age_range[0] > self.age_range[1]:
            raise ValueError("age_range must be (low, high) with low <= high")
        if beta0.shape != (model.dim,):
            raise ValueError(f"beta0 length {beta0.shape[0]} != model dim {model.dim}")
        if model.family is not self.family:
            raise ValueError("model family must match config family")
        beta0.setflags(write=False)
        object.__setattr__(self, "beta0", beta0)
        object.__setattr__(self, "model", model)

    def with_length(self, length: int) -> "SimulationConfig":
        return replace(self, length=length)

    def with_seed(self, seed) -> "SimulationConfig":
        return replace(self, seed=seed)


class ChangeScenario(enum.Enum):
    """Which coefficient the injected shift targets.

    GLOBAL moves the shared-attribute effect (coordinate 1), touching every
    edge; LOCAL moves the membership effect (coordinate 2), touching only
    edges adjacent to members.
    """

    GLOBAL = "global"
    LOCAL = "local"

    @property
    def coord(self) -> int:
        return 1 if self is ChangeScenario.GLOBAL else 2

    @property
    def default_sign(self) -> float:
        return -1.0 if self is ChangeScenario.GLOBAL else 1.0


@dataclass(frozen=True)
class ChangeSpec:
    """Shock description: scenario, change time, magnitude, direction.

    ``sigma_mode`` picks the scale that multiplies delta: "fixed" uses
    sqrt(Q_ii)/(1 - F_ii) (the default), "stationary" uses the AR(1)
    stationary standard deviation sqrt(Q_ii/(1 - F_ii^2)) for sensitivity
    runs (see :func:`state_sigma`).
    """

    scenario: ChangeScenario
    tau: int
    delta: float
    sign: float | None = None
    sigma_mode: str = "fixed"

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if self.sign is not None and self.sign not in (-1.0, 1.0):
            raise ValueError("sign must be +1 or -1")
        if self.sigma_mode not in ("fixed", "stationary"):
            raise ValueError("sigma_mode must be 'fixed' or 'stationary'")

    @property
    def resolved_sign(self) -> float:
        return self.scenario.default_sign if self.sign is None else self.sign

    def offset(self, model: StateSpaceModel) -> np.ndarray:
        """Per-step state offset applied from tau on: sign * delta * sigma_i."""
        c = self.scenario.coord
        out = np.zeros(model.dim)
        out[c] = self.resolved_sign * self.delta * state_sigma(
            model.Q[c, c], model.F[c, c], stationary=self.sigma_mode == "stationary"
        )
        return out


def state_sigma(q_ii: float, f_ii: float, stationary: bool = False) -> float:
    """Scale of a state coordinate used to express change magnitudes.

    The default is sqrt(q_ii) / (1 - f_ii). ``stationary=True`` switches to
    the AR(1) stationary standard deviation sqrt(q_ii / (1 - f_ii^2)) for
    sensitivity runs.
    """
    if abs(f_ii) >= 1:
        raise NonStationaryError(f"|F_ii| must be < 1, got {f_ii}")
    if q_ii < 0:
        raise ValueError("q_ii must be >= 0")
    if stationary:
        return float(np.sqrt(q_ii / (1.0 - f_ii * f_ii)))
    return float(np.sqrt(q_ii) / (1.0 - f_ii))


def generate_attributes(
    config: SimulationConfig, rng: np.random.Generator | None = None
) -> AttributeMatrix:
    """Draw node ages and build the fixed edge design [1, age gap, member flag].

    Ages are uniform integers on the configured range; the first
    ``member_count`` node ids are the association members.
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    low, high = config.age_range
    ages = rng.integers(low, high + 1, size=config.n)
    member = np.arange(config.n) < config.member_count
    i, j = edge_pairs(config.n, config.directed)
    a = np.abs(ages[i] - ages[j]).astype(float)
    c = (member[i] | member[j]).astype(float)
    values = np.column_stack([np.ones(a.shape[0]), a, c])
    return AttributeMatrix(values, config.n, config.directed)


def _noise_factor(Q: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(Q)
    except np.linalg.LinAlgError:
        vals, vecs = np.linalg.eigh(Q)
        return vecs * np.sqrt(np.clip(vals, 0.0, None))


def evolve_state(
    beta_prev: np.ndarray,
    model: StateSpaceModel,
    rng: np.random.Generator,
    offset: np.ndarray | None = None,
) -> np.ndarray:
    """One transition step: F beta + xi + noise, plus any change offset."""
    beta = model.F @ np.asarray(beta_prev, dtype=float) + model.xi
    beta = beta + _noise_factor(model.Q) @ rng.standard_normal(model.dim)
    if offset is not None:
        beta = beta + offset
    return beta


def sample_snapshot(
    beta: np.ndarray,
    X: AttributeMatrix | np.ndarray,
    family: EdgeFamily,
    rng: np.random.Generator,
) -> np.ndarray:
    """Sample edge weights independently at means given by the response."""
    Xv = X.values if isinstance(X, AttributeMatrix) else np.asarray(X, float)
    theta = mean_response(Xv @ np.asarray(beta, float), family)
    if family is EdgeFamily.BERNOULLI:
        return (rng.random(theta.shape[0]) < theta).astype(float)
    return rng.poisson(theta).astype(float)


def stream_arrays(
    config: SimulationConfig, change: ChangeSpec | None = None
) -> tuple[AttributeMatrix, Iterator[tuple[int, np.ndarray, np.ndarray]]]:
    """Lazy stream generation: the fixed design plus a (t, beta_t, w_t) iterator.

    Snapshot times run t = 1..length from the initial state at t = 0. The
    draw order (ages, then per step noise and edges) is fixed, so equal
    seeds give identical streams and a change at tau leaves everything
    before tau untouched.
    """
    rng = np.random.default_rng(config.seed)
    X = generate_attributes(config, rng)
    model = config.model
    Xv = X.values
    L = _noise_factor(model.Q)
    offset = change.offset(model) if change is not None else None
    family = config.family

    def steps() -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
        beta = np.array(config.beta0, dtype=float)
        for t in range(1, config.length + 1):
            beta = model.F @ beta + model.xi + L @ rng.standard_normal(model.dim)
            if offset is not None and t >= change.tau:
                beta = beta + offset
            theta = mean_response(Xv @ beta, family)
            if family is EdgeFamily.BERNOULLI:
                w = (rng.random(theta.shape[0]) < theta).astype(float)
            else:
                w = rng.poisson(theta).astype(float)
            yield t, beta, w

    return X, steps()


def simulate_stream(
    config: SimulationConfig, change: ChangeSpec | None = None
) -> tuple[NetworkStream, np.ndarray]:
    """Materialize a stream and its latent coefficient trajectory.

    Returns the stream (snapshots share one attribute matrix) and a
    (length, p+1) array of the true beta_t values, aligned with snapshot
    times 1..length.
    """
    X, steps = stream_arrays(config, change)
    snapshots = []
    betas = np.empty((config.length, config.model.dim))
    for t, beta, w in steps:
        betas[t - 1] = beta
        snapshots.append(
            NetworkSnapshot(
                t=t, n=config.n, directed=config.directed,
                weights=w, family=config.family,
            )
        )
    stream = NetworkStream(tuple(snapshots), tuple(X for _ in snapshots))
    return stream, betas
