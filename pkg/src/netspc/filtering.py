"""State-space evolution of GLM coefficients and Kalman-style updates.

The coefficient vector follows a linear transition
``beta_t = F beta_{t-1} + xi + eps_t`` with Gaussian process noise, while
the network observation is nonlinear through the family response. The main
update is therefore an extended Kalman step linearized at the predicted
coefficients.

The textbook gain requires solving an m-by-m innovation system, which is
wasteful for large networks. Because the observation noise is diagonal and
the linearization point is fixed at the predicted state, the same posterior
can be computed three ways:

* ``batch``: the literal gain formula (used for small m);
* ``sequential``: m scalar measurement updates against the linearized
  observation model;
* ``information``: a (p+1)-sized solve via the information-form identities
  (requires an invertible prior covariance).

All three are algebraically identical and tested against each other;
``auto`` picks batch for m <= 512, otherwise information with a sequential
fallback when the prior covariance is singular.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import (
    DimensionError,
    InitializationError,
    NumericallySingularError,
)
from .glm import EdgeFamily, GlmFit, mean_response, variance_function

PHASE_PREDICTED = "predicted"
PHASE_UPDATED = "updated"

BATCH_THRESHOLD = 512


def _symmetrize(A: np.ndarray) -> np.ndarray:
    return 0.5 * (A + A.T)


def _freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.setflags(write=False)


@dataclass(frozen=True, eq=False)
class StateSpaceModel:
    """Linear transition over coefficients: F, constant xi, noise covariance Q."""

    F: np.ndarray
    xi: np.ndarray
    Q: np.ndarray
    family: EdgeFamily

    def __post_init__(self):
        F = np.array(self.F, dtype=float)
        xi = np.array(self.xi, dtype=float)
        Q = np.array(self.Q, dtype=float)
        k = F.shape[0]
        if F.shape != (k, k) or xi.shape != (k,) or Q.shape != (k, k):
            raise DimensionError(
                f"inconsistent shapes: F {F.shape}, xi {xi.shape}, Q {Q.shape}"
            )
        scale = 1.0 + np.abs(Q).max()
        if np.abs(Q - Q.T).max() > 1e-8 * scale:
            raise ValueError("Q must be symmetric")
        if np.linalg.eigvalsh(Q).min() < -1e-8 * scale:
            raise ValueError("Q must be positive semidefinite")
        _freeze(F, xi, Q)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "Q", Q)

    @property
    def dim(self) -> int:
        return self.F.shape[0]


@dataclass(frozen=True, eq=False)
class FilterState:
    """Coefficient estimate and covariance, tagged predicted or updated."""

    t: int
    beta: np.ndarray
    P: np.ndarray
    phase: str

    def __post_init__(self):
        beta = np.array(self.beta, dtype=float)
        P = np.array(self.P, dtype=float)
        k = beta.shape[0]
        if P.shape != (k, k):
            raise DimensionError(f"P shape {P.shape} != ({k}, {k})")
        scale = 1.0 + np.abs(P).max()
        if np.abs(P - P.T).max() > 1e-8 * scale:
            raise ValueError("P must be symmetric")
        if np.diag(P).min() < -1e-10 * scale:
            raise ValueError("P diagonal must be non-negative")
        if self.phase not in (PHASE_PREDICTED, PHASE_UPDATED):
            raise ValueError(f"unknown phase {self.phase!r}")
        _freeze(beta, P)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "P", P)

    @property
    def dim(self) -> int:
        return self.beta.shape[0]


@dataclass(frozen=True, eq=False)
class PredictedObservation:
    """One-step-ahead predicted network: means, noise diagonal, Jacobian."""

    w_pred: np.ndarray
    R_diag: np.ndarray
    G: np.ndarray

    def __post_init__(self):
        w = np.array(self.w_pred, dtype=float)
        R = np.array(self.R_diag, dtype=float)
        G = np.array(self.G, dtype=float)
        m = w.shape[0]
        if R.shape != (m,) or G.ndim != 2 or G.shape[1] != m:
            raise DimensionError(
                f"inconsistent shapes: w_pred {w.shape}, R {R.shape}, G {G.shape}"
            )
        if R.min() <= 0:
            raise ValueError("R_diag must be strictly positive")
        _freeze(w, R, G)
        object.__setattr__(self, "w_pred", w)
        object.__setattr__(self, "R_diag", R)
        object.__setattr__(self, "G", G)

    @property
    def m(self) -> int:
        return self.w_pred.shape[0]


def predict_state(model: StateSpaceModel, state: FilterState) -> FilterState:
    """Time update: propagate an updated state one step through the transition."""
    if state.phase != PHASE_UPDATED:
        raise ValueError("predict_state requires an updated-phase state")
    if state.dim != model.dim:
        raise DimensionError(f"state dim {state.dim} != model dim {model.dim}")
    beta = model.F @ state.beta + model.xi
    P = _symmetrize(model.F @ state.P @ model.F.T + model.Q)
    return FilterState(t=state.t + 1, beta=beta, P=P, phase=PHASE_PREDICTED)


def response_jacobian(
    X: np.ndarray, beta_pred: np.ndarray, family: EdgeFamily
) -> np.ndarray:
    """(p+1)-by-m Jacobian of the response map at ``beta_pred``.

    Canonical links make the per-edge derivative equal the response
    variance: theta(1-theta) for Bernoulli, theta for Poisson.
    """
    X = np.asarray(X, dtype=float)
    theta = mean_response(X @ np.asarray(beta_pred, dtype=float), family)
    return (X * variance_function(theta, family)[:, None]).T


def predict_observation(
    state: FilterState, X: np.ndarray, family: EdgeFamily
) -> PredictedObservation:
    """Predicted edge means, observation-noise diagonal, and Jacobian."""
    if state.phase != PHASE_PREDICTED:
        raise ValueError("predict_observation requires a predicted-phase state")
    X = np.asarray(X, dtype=float)
    theta = mean_response(X @ state.beta, family)
    var = variance_function(theta, family)
    G = (X * var[:, None]).T
    return PredictedObservation(w_pred=theta, R_diag=var, G=G)


def _update_batch(P, beta, G, R, innovation):
    PG = P @ G
    S = G.T @ PG
    S[np.diag_indices_from(S)] += R
    try:
        K = np.linalg.solve(S, PG.T).T
    except np.linalg.LinAlgError as exc:
        raise NumericallySingularError("innovation covariance is singular") from exc
    beta_new = beta + K @ innovation
    P_new = (np.eye(P.shape[0]) - K @ G.T) @ P
    return beta_new, _symmetrize(P_new)


def _update_sequential(P, beta, G, R, innovation):
    # Scalar measurement updates against the linearized model; the running
    # innovation must be corrected for the state movement since beta_pred.
    beta_c = beta.copy()
    P_c = P.copy()
    for i in range(G.shape[1]):
        g = G[:, i]
        pg = P_c @ g
        s = float(g @ pg) + R[i]
        gain = pg / s
        resid = innovation[i] - float(g @ (beta_c - beta))
        beta_c = beta_c + gain * resid
        P_c = P_c - np.outer(gain, pg)
    return beta_c, _symmetrize(P_c)


def _update_information(P, beta, G, R, innovation):
    k = P.shape[0]
    try:
        P_factor = cho_factor(P)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericallySingularError("prior covariance is singular") from exc
    P_inv = cho_solve(P_factor, np.eye(k))
    A = _symmetrize(P_inv + (G / R) @ G.T)
    try:
        A_factor = cho_factor(A)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericallySingularError("posterior information is singular") from exc
    P_new = _symmetrize(cho_solve(A_factor, np.eye(k)))
    beta_new = beta + P_new @ (G @ (innovation / R))
    return beta_new, P_new


def ekf_update(
    state: FilterState,
    pred: PredictedObservation,
    w_obs: np.ndarray,
    method: str = "auto",
) -> FilterState:
    """Measurement update of a predicted state against the observed network.

    ``method`` selects between the algebraically equivalent paths described
    in the module docstring ("auto", "batch", "sequential", "information").
    """
    if state.phase != PHASE_PREDICTED:
        raise ValueError("ekf_update requires a predicted-phase state")
    w_obs = np.asarray(w_obs, dtype=float)
    if w_obs.shape != pred.w_pred.shape or pred.G.shape[0] != state.dim:
        raise DimensionError(
            f"inconsistent shapes: w_obs {w_obs.shape}, pred m={pred.m}, "
            f"G {pred.G.shape}, state dim {state.dim}"
        )
    innovation = w_obs - pred.w_pred
    if method == "auto":
        if pred.m <= BATCH_THRESHOLD:
            method = "batch"
        else:
            try:
                beta, P = _update_information(
                    state.P, state.beta, pred.G, pred.R_diag, innovation
                )
                return FilterState(state.t, beta, P, PHASE_UPDATED)
            except NumericallySingularError:
                method = "sequential"
    impl = {
        "batch": _update_batch,
        "sequential": _update_sequential,
        "information": _update_information,
    }.get(method)
    if impl is None:
        raise ValueError(f"unknown update method {method!r}")
    beta, P = impl(state.P, state.beta, pred.G, pred.R_diag, innovation)
    return FilterState(state.t, beta, P, PHASE_UPDATED)


def kf_update_approx(state: FilterState, static_fit: GlmFit) -> FilterState:
    """Linear KF update treating the snapshot's static MLE as the observation.

    The static estimate is asymptotically Gaussian around the true
    coefficients with its fit covariance, so the filter can absorb it
    through a linear observation with noise covariance ``static_fit.covariance``.
    """
    if state.phase != PHASE_PREDICTED:
        raise ValueError("kf_update_approx requires a predicted-phase state")
    beta_hat = np.asarray(static_fit.beta_hat, dtype=float)
    R = np.asarray(static_fit.covariance, dtype=float)
    if beta_hat.shape != state.beta.shape or R.shape != state.P.shape:
        raise DimensionError("static fit dimensions do not match the state")
    S = state.P + R
    try:
        K = np.linalg.solve(S, state.P).T
    except np.linalg.LinAlgError as exc:
        raise NumericallySingularError("P + R is singular") from exc
    beta = state.beta + K @ (beta_hat - state.beta)
    P = _symmetrize((np.eye(state.dim) - K) @ state.P)
    return FilterState(state.t, beta, P, PHASE_UPDATED)


def fit_transition(
    beta_series: np.ndarray,
    family: EdgeFamily,
    min_length: int = 10,
) -> StateSpaceModel:
    """Least-squares AR(1) fit of the transition model, coordinate by coordinate.

    Regresses beta_{t,i} on beta_{t-1,i} to get diagonal F and xi; Q is
    diagonal with the residual variances (ddof=2). A constant coordinate
    degenerates to F_ii = 0, xi_i = mean, Q_ii = 0 with a warning.
    """
    series = np.asarray(beta_series, dtype=float)
    if series.ndim == 1:
        series = series[:, None]
    T, k = series.shape
    if T < min_length:
        raise ValueError(f"need at least {min_length} observations, got {T}")
    F = np.zeros((k, k))
    xi = np.zeros(k)
    Q = np.zeros((k, k))
    x = series[:-1]
    y = series[1:]
    for i in range(k):
        vx = float(np.var(x[:, i]))
        scale = 1.0 + float(np.mean(x[:, i]) ** 2)
        if vx < 1e-12 * scale:
            warnings.warn(
                f"coordinate {i} is constant; transition fit degenerates",
                stacklevel=2,
            )
            xi[i] = float(np.mean(y[:, i]))
            continue
        slope = float(np.cov(x[:, i], y[:, i], ddof=1)[0, 1] / np.var(x[:, i], ddof=1))
        intercept = float(np.mean(y[:, i]) - slope * np.mean(x[:, i]))
        resid = y[:, i] - slope * x[:, i] - intercept
        F[i, i] = slope
        xi[i] = intercept
        Q[i, i] = float(resid @ resid / max(len(resid) - 2, 1))
    return StateSpaceModel(F=F, xi=xi, Q=Q, family=family)


def initialize_filter(fit: GlmFit, t: int = 0) -> FilterState:
    """Seed the filter from a converged static fit."""
    if not fit.converged:
        raise InitializationError("cannot initialize the filter from a non-converged fit")
    return FilterState(
        t=t, beta=fit.beta_hat, P=_symmetrize(np.asarray(fit.covariance, float)),
        phase=PHASE_UPDATED,
    )
