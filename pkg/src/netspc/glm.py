"""Exponential-family GLM machinery for edge-weight regression.

Two families cover the supported network types: Bernoulli with a logistic
response for binary edges, and Poisson with an exponential response for
count-weighted edges. Both use their canonical link, so the IRWLS working
weights coincide with the response variance and the observed and expected
information agree.

Degenerate fitted means are clamped (Bernoulli means to
``[THETA_EPS, 1 - THETA_EPS]``, Poisson means floored at ``THETA_EPS``,
variances floored at ``VAR_FLOOR``) because residual scaling and the
observation-noise matrix divide by the variance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import expit

from .errors import DimensionError, SeparationError, SingularDesignError

THETA_EPS = 1e-9
VAR_FLOOR = 1e-12
ETA_CLIP = 700.0  # exp(709) is close to the float64 overflow point


class EdgeFamily(str, enum.Enum):
    """Distribution family of the edge weights."""

    BERNOULLI = "bernoulli"
    POISSON = "poisson"


def mean_response(eta: np.ndarray, family: EdgeFamily) -> np.ndarray:
    """Map linear predictors to fitted means (logistic or exponential)."""
    eta = np.asarray(eta, dtype=float)
    if family is EdgeFamily.BERNOULLI:
        return np.clip(expit(eta), THETA_EPS, 1.0 - THETA_EPS)
    if family is EdgeFamily.POISSON:
        return np.maximum(np.exp(np.clip(eta, -ETA_CLIP, ETA_CLIP)), THETA_EPS)
    raise ValueError(f"unknown family: {family!r}")


def variance_function(theta: np.ndarray, family: EdgeFamily) -> np.ndarray:
    """Response variance at the given means, floored at ``VAR_FLOOR``."""
    theta = np.asarray(theta, dtype=float)
    if family is EdgeFamily.BERNOULLI:
        var = theta * (1.0 - theta)
    elif family is EdgeFamily.POISSON:
        var = theta
    else:
        raise ValueError(f"unknown family: {family!r}")
    return np.maximum(var, VAR_FLOOR)


def pearson_residuals(
    w_obs: np.ndarray, w_pred: np.ndarray, family: EdgeFamily
) -> np.ndarray:
    """Standardized residuals (observed - predicted) / sqrt(predicted variance)."""
    w_obs = np.asarray(w_obs, dtype=float)
    w_pred = np.asarray(w_pred, dtype=float)
    if w_obs.shape != w_pred.shape:
        raise DimensionError(
            f"observed {w_obs.shape} and predicted {w_pred.shape} lengths differ"
        )
    return (w_obs - w_pred) / np.sqrt(variance_function(w_pred, family))


def _loglik(
    eta: np.ndarray,
    theta: np.ndarray,
    w: np.ndarray,
    family: EdgeFamily,
    sample_weight: np.ndarray | float | None,
) -> float:
    if family is EdgeFamily.BERNOULLI:
        terms = w * np.log(theta) + (1.0 - w) * np.log1p(-theta)
    else:
        # log(w!) omitted: constant in the coefficients.
        terms = w * eta - theta
    if sample_weight is None:
        return float(terms.sum())
    return float((terms * sample_weight).sum())


def log_likelihood(
    beta: np.ndarray, X: np.ndarray, w: np.ndarray, family: EdgeFamily
) -> float:
    """Log-likelihood of coefficients ``beta`` for design ``X`` and weights ``w``."""
    X = np.asarray(X, dtype=float)
    beta = np.asarray(beta, dtype=float)
    w = np.asarray(w, dtype=float)
    if X.ndim != 2 or X.shape[1] != beta.shape[0] or X.shape[0] != w.shape[0]:
        raise DimensionError(
            f"incompatible shapes: X {X.shape}, beta {beta.shape}, w {w.shape}"
        )
    eta = X @ beta
    return _loglik(eta, mean_response(eta, family), w, family, None)


def score(
    beta: np.ndarray, X: np.ndarray, w: np.ndarray, family: EdgeFamily
) -> np.ndarray:
    """Analytic score X'(w - theta); gradient of :func:`log_likelihood`."""
    X = np.asarray(X, dtype=float)
    return X.T @ (np.asarray(w, dtype=float) - mean_response(X @ beta, family))


@dataclass(eq=False)
class GlmFit:
    """Result of an IRWLS fit.

    ``covariance`` is the inverse Fisher information (X'QX)^-1 evaluated at
    the returned coefficients. ``converged`` is False when the iteration
    limit was reached; the best iterate found so far is returned either way.
    """

    beta_hat: np.ndarray
    covariance: np.ndarray
    iterations: int
    converged: bool
    final_loglik: float


def _initial_beta(
    X: np.ndarray,
    w: np.ndarray,
    family: EdgeFamily,
    sample_weight: np.ndarray | float | None,
) -> np.ndarray:
    beta = np.zeros(X.shape[1])
    if sample_weight is None:
        grand_mean = float(np.mean(w))
    else:
        sw = np.broadcast_to(np.asarray(sample_weight, dtype=float), w.shape)
        grand_mean = float(np.sum(sw * w) / np.sum(sw))
    grand_mean = min(max(grand_mean, THETA_EPS), 1.0 / THETA_EPS)
    if np.all(X[:, 0] == 1.0):
        if family is EdgeFamily.BERNOULLI:
            gm = min(grand_mean, 1.0 - THETA_EPS)
            beta[0] = np.log(gm / (1.0 - gm))
        else:
            beta[0] = np.log(grand_mean)
    return beta


def irwls_fit(
    X: np.ndarray,
    w: np.ndarray,
    family: EdgeFamily,
    tol: float = 1e-8,
    max_iter: int = 100,
    sample_weight: np.ndarray | float | None = None,
    beta0: np.ndarray | None = None,
    separation_bound: float = 1e3,
) -> GlmFit:
    """Fit GLM coefficients by iteratively reweighted least squares.

    Each iteration solves the weighted normal equations
    ``beta = (X'QX)^-1 X'Qz`` with working responses
    ``z = eta + (w - theta)/var(theta)`` and weights ``Q = diag(var(theta))``
    (canonical links). Steps that would decrease the log-likelihood are
    halved, so the likelihood is non-decreasing across accepted iterations.

    ``sample_weight`` scales each observation's contribution (scalar or
    per-row); used for pooled window fits. ``beta0`` warm-starts the
    iteration. Coefficients exceeding ``separation_bound`` in absolute
    value raise :class:`SeparationError`.
    """
    X = np.asarray(X, dtype=float)
    w = np.asarray(w, dtype=float)
    if X.ndim != 2 or X.shape[0] != w.shape[0]:
        raise DimensionError(f"incompatible shapes: X {X.shape}, w {w.shape}")
    m, k = X.shape
    if m < k:
        raise SingularDesignError(f"need at least {k} observations, got {m}")
    sw = None
    if sample_weight is not None:
        sw = np.asarray(sample_weight, dtype=float)
        if sw.ndim == 0:
            sw = float(sw)

    if beta0 is not None:
        beta = np.array(beta0, dtype=float)
        if beta.shape != (k,):
            raise DimensionError(f"beta0 shape {beta.shape} != ({k},)")
    else:
        beta = _initial_beta(X, w, family, sw)

    def weighted_solve(theta: np.ndarray, rhs: np.ndarray | None):
        var = variance_function(theta, family)
        q = var if sw is None else var * sw
        Xq = X * q[:, None]
        A = Xq.T @ X
        try:
            factor = cho_factor(A)
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise SingularDesignError(
                "weighted normal equations are singular (rank-deficient design)"
            ) from exc
        if rhs is None:
            cov = cho_solve(factor, np.eye(k))
            return 0.5 * (cov + cov.T)
        return cho_solve(factor, Xq.T @ rhs), var

    eta = X @ beta
    theta = mean_response(eta, family)
    ll = _loglik(eta, theta, w, family, sw)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        var = variance_function(theta, family)
        z = eta + (w - theta) / var
        candidate, _ = weighted_solve(theta, z)
        step = candidate - beta
        # Step-halving keeps the log-likelihood non-decreasing.
        scale = 1.0
        for _ in range(30):
            beta_new = beta + scale * step
            eta_new = X @ beta_new
            theta_new = mean_response(eta_new, family)
            ll_new = _loglik(eta_new, theta_new, w, family, sw)
            if ll_new >= ll - 1e-12:
                break
            scale *= 0.5
        else:
            # Could not find an improving step; report the current iterate.
            return GlmFit(beta, weighted_solve(theta, None), iterations, False, ll)
        if np.max(np.abs(beta_new)) > separation_bound:
            raise SeparationError(
                f"coefficient magnitude exceeded {separation_bound:g}; "
                "data are likely separated"
            )
        delta = np.max(np.abs(beta_new - beta)) / (1.0 + np.max(np.abs(beta_new)))
        beta, eta, theta, ll = beta_new, eta_new, theta_new, ll_new
        if delta < tol:
            converged = True
            break

    return GlmFit(beta, weighted_solve(theta, None), iterations, converged, ll)
