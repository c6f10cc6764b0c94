"""Phase II monitoring: EWMA chart on mean Pearson residuals, one-step
predictors, and Monte Carlo machinery for control-limit calibration and
run-length evaluation.

Conventions shared by every Monte Carlo routine here:

* A replication's snapshots are indexed 0..L-1 with times t = 1..L.
  Charting begins at stream index ``start``; everything before it warms
  the predictor. The chart's step counter, and with it the time-varying
  limits, count from the monitoring start.
* With a change at time tau, run length = first signal time - tau + 1.
  Replications that signal before tau are discarded and regenerated from
  a fresh seed: the estimand conditions on no false alarm before the
  change. In-control run length counts chart points from the monitoring
  start. Runs without a signal are censored at the horizon and reported
  with rl = horizon.
* Stream seeds derive from (base_seed, replication, attempt), so results
  are reproducible and replications are independent; a long reference
  stream (replication index 0) estimates the in-control spread s of the
  residual mean before any chart is built.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.signal import lfilter

from .errors import (
    CalibrationRangeError,
    InitializationError,
    InsufficientReferenceError,
    MonteCarloError,
)
from .glm import EdgeFamily, irwls_fit, mean_response, pearson_residuals
from .filtering import (
    FilterState,
    StateSpaceModel,
    ekf_update,
    initialize_filter,
    kf_update_approx,
    predict_observation,
    predict_state,
)
from .network import NetworkStream
from .simulate import ChangeSpec, SimulationConfig, stream_arrays

# ---------------------------------------------------------------------------
# EWMA chart


@dataclass(frozen=True)
class EwmaChart:
    """EWMA statistic z with time-varying limits l * s * f(steps).

    The statistic starts at z = 0; ``steps`` counts updates since
    monitoring began and drives the limit's variance factor.
    """

    lam: float
    l: float
    s: float
    z: float = 0.0
    steps: int = 0

    def __post_init__(self):
        if not 0.0 < self.lam <= 1.0:
            raise ValueError("lambda must be in (0, 1]")
        if self.l <= 0:
            raise ValueError("limit multiplier l must be > 0")
        if self.s < 0:
            raise ValueError("in-control sd s must be >= 0")


@dataclass(frozen=True)
class ChartPoint:
    """One charted step: statistic, limits, and the signal flag."""

    t: int
    z: float
    ucl: float
    lcl: float
    signal: bool


def control_limit_factor(lam: float, steps) -> np.ndarray | float:
    """Variance factor sqrt((lam/(2-lam)) (1-(1-lam)^(2 steps)))."""
    steps = np.asarray(steps, dtype=float)
    out = np.sqrt(lam / (2.0 - lam) * (1.0 - (1.0 - lam) ** (2.0 * steps)))
    return float(out) if out.ndim == 0 else out


def asymptotic_limit(chart: EwmaChart) -> float:
    """Limit the UCL converges to as steps grow."""
    return chart.l * chart.s * float(np.sqrt(chart.lam / (2.0 - chart.lam)))


def ewma_step(
    chart: EwmaChart, r_bar: float, t: int | None = None
) -> tuple[EwmaChart, ChartPoint]:
    """Advance the chart by one residual mean; returns the new chart and point."""
    z = chart.lam * r_bar + (1.0 - chart.lam) * chart.z
    steps = chart.steps + 1
    ucl = chart.l * chart.s * control_limit_factor(chart.lam, steps)
    point = ChartPoint(
        t=steps if t is None else t,
        z=z,
        ucl=ucl,
        lcl=-ucl,
        signal=bool(z >= ucl or z <= -ucl),
    )
    return replace(chart, z=z, steps=steps), point


def mean_residual(r: np.ndarray) -> float:
    """Mean of a residual vector; the monitored scalar."""
    r = np.asarray(r, dtype=float)
    if r.size == 0:
        raise ValueError("residual vector is empty")
    return float(r.mean())


def estimate_sigma(reference_rbar: Sequence[float], min_length: int = 30) -> float:
    """Sample standard deviation (ddof=1) of an in-control residual-mean series."""
    series = np.asarray(reference_rbar, dtype=float)
    if series.size < min_length:
        raise InsufficientReferenceError(
            f"need at least {min_length} reference points, got {series.size}"
        )
    s = float(series.std(ddof=1))
    if s == 0.0:
        warnings.warn("reference series is constant; chart limits degenerate to zero",
                      stacklevel=2)
    return s


# ---------------------------------------------------------------------------
# One-step-ahead predictors

# Refitting predictors tolerate quasi-separated snapshots: mean clamping
# keeps such fits finite, their saturated predictions produce the large
# residuals a chart should see, and the next well-behaved snapshot pulls
# the warm-started coefficients back. The strict default bound would
# instead abort a whole Monte Carlo replication.
PREDICTOR_SEPARATION_BOUND = 1e6


@dataclass(frozen=True)
class PredictorKind:
    """Which one-step predictor to run.

    ``dynamic`` filters the state-space model (EKF by default, or the
    approximate linear KF); ``static`` refits on the latest snapshot only;
    ``sliding`` refits on a pooled window of the last ``window`` snapshots.
    """

    kind: str
    update: str = "ekf"
    window: int = 5

    def __post_init__(self):
        if self.kind not in ("dynamic", "static", "sliding"):
            raise ValueError(f"unknown predictor kind {self.kind!r}")
        if self.update not in ("ekf", "approx"):
            raise ValueError(f"unknown dynamic update {self.update!r}")
        if self.window < 1:
            raise ValueError("sliding window must be >= 1")

    @classmethod
    def dynamic(cls, update: str = "ekf") -> "PredictorKind":
        return cls(kind="dynamic", update=update)

    @classmethod
    def static(cls) -> "PredictorKind":
        return cls(kind="static")

    @classmethod
    def sliding(cls, window: int = 5) -> "PredictorKind":
        return cls(kind="sliding", window=window)

    @property
    def label(self) -> str:
        if self.kind == "dynamic":
            return "dynamic" if self.update == "ekf" else "dynamic-approx"
        return self.kind


class DynamicPredictor:
    """Filter-based predictor over a known transition model.

    ``predict`` runs the time update and caches the predicted observation;
    ``observe`` folds the snapshot in with the EKF (or, with
    update="approx", a static refit absorbed through the linear KF). If no
    initial state is supplied, the first observed snapshot initializes the
    filter from its static fit.
    """

    def __init__(
        self,
        model: StateSpaceModel,
        state: FilterState | None = None,
        update: str = "ekf",
    ):
        if update not in ("ekf", "approx"):
            raise ValueError(f"unknown dynamic update {update!r}")
        self.model = model
        self.update = update
        self.state = state
        self._pending = None  # (X id, predicted state, predicted observation)

    @property
    def family(self) -> EdgeFamily:
        return self.model.family

    def warm_up(self, pairs: Iterable[tuple[np.ndarray, np.ndarray]]) -> None:
        for w, X in pairs:
            self.observe(w, X)

    def predict(self, X: np.ndarray) -> np.ndarray:
        if self.state is None:
            raise InitializationError("dynamic predictor has no state yet")
        pred_state = predict_state(self.model, self.state)
        pred_obs = predict_observation(pred_state, X, self.family)
        self._pending = (id(X), pred_state, pred_obs)
        return pred_obs.w_pred

    def observe(self, w: np.ndarray, X: np.ndarray) -> None:
        if self.state is None:
            fit = irwls_fit(X, w, self.family)
            self.state = initialize_filter(fit, t=0)
            return
        if self._pending is None or self._pending[0] != id(X):
            self.predict(X)
        _, pred_state, pred_obs = self._pending
        self._pending = None
        if self.update == "ekf":
            self.state = ekf_update(pred_state, pred_obs, w)
        else:
            fit = irwls_fit(X, w, self.family, beta0=pred_state.beta,
                            separation_bound=PREDICTOR_SEPARATION_BOUND)
            self.state = kf_update_approx(pred_state, fit)


class StaticPredictor:
    """Predicts the next snapshot from a GLM fit on the current one."""

    def __init__(self, family: EdgeFamily):
        self.family = family
        self._beta = None
        self._data = None

    def warm_up(self, pairs: Sequence[tuple[np.ndarray, np.ndarray]]) -> None:
        pairs = list(pairs)
        if pairs:
            self.observe(*pairs[-1])

    def predict(self, X: np.ndarray) -> np.ndarray:
        self._refit()
        if self._beta is None:
            raise InitializationError("static predictor has not observed a snapshot")
        return mean_response(np.asarray(X, float) @ self._beta, self.family)

    def observe(self, w: np.ndarray, X: np.ndarray) -> None:
        self._data = (w, X)

    def _refit(self) -> None:
        if self._data is None:
            return
        w, X = self._data
        self._beta = irwls_fit(
            X, w, self.family, beta0=self._beta,
            separation_bound=PREDICTOR_SEPARATION_BOUND,
        ).beta_hat
        self._data = None


class SlidingStaticPredictor:
    """Predicts from a pooled GLM fit over the last ``window`` snapshots.

    When the window shares a single design matrix the pooled fit is done
    as a weighted fit on the mean response (identical likelihood, one
    network's worth of rows); otherwise the rows are stacked.
    """

    def __init__(self, family: EdgeFamily, window: int = 5):
        if window < 1:
            raise ValueError("window must be >= 1")
        self.family = family
        self.window = window
        self._entries: list[tuple[np.ndarray, np.ndarray]] = []
        self._beta = None
        self._dirty = False

    def warm_up(self, pairs: Sequence[tuple[np.ndarray, np.ndarray]]) -> None:
        for pair in list(pairs)[-self.window:]:
            self.observe(*pair)

    def predict(self, X: np.ndarray) -> np.ndarray:
        self._refit()
        if self._beta is None:
            raise InitializationError("sliding predictor has not observed a snapshot")
        return mean_response(np.asarray(X, float) @ self._beta, self.family)

    def observe(self, w: np.ndarray, X: np.ndarray) -> None:
        self._entries.append((w, X))
        if len(self._entries) > self.window:
            self._entries.pop(0)
        self._dirty = True

    def _refit(self) -> None:
        if not self._dirty:
            return
        ws = [w for w, _ in self._entries]
        Xs = [X for _, X in self._entries]
        if all(X is Xs[0] for X in Xs):
            w_mean = np.mean(ws, axis=0) if len(ws) > 1 else ws[0]
            fit = irwls_fit(
                Xs[0], w_mean, self.family,
                sample_weight=float(len(ws)), beta0=self._beta,
                separation_bound=PREDICTOR_SEPARATION_BOUND,
            )
        else:
            fit = irwls_fit(
                np.vstack(Xs), np.concatenate(ws), self.family, beta0=self._beta,
                separation_bound=PREDICTOR_SEPARATION_BOUND,
            )
        self._beta = fit.beta_hat
        self._dirty = False


def make_predictor(
    kind: PredictorKind,
    family: EdgeFamily,
    model: StateSpaceModel | None = None,
    state: FilterState | None = None,
):
    """Build a fresh predictor instance for the given kind."""
    if kind.kind == "dynamic":
        if model is None:
            raise ValueError("dynamic predictor requires a state-space model")
        return DynamicPredictor(model, state=state, update=kind.update)
    if kind.kind == "static":
        return StaticPredictor(family)
    return SlidingStaticPredictor(family, window=kind.window)


# ---------------------------------------------------------------------------
# Stream monitoring


def monitor_stream(
    stream: NetworkStream,
    predictor: PredictorKind | object,
    chart: EwmaChart,
    start: int,
    model: StateSpaceModel | None = None,
    rbar_out: list | None = None,
) -> list[ChartPoint]:
    """Chart a stream from index ``start`` with one-step-ahead predictions.

    Snapshots before ``start`` warm the predictor. At each monitored index
    the flow is: predict the incoming snapshot, form Pearson residuals,
    advance the chart on their mean, then let the predictor absorb the
    observed snapshot. ``predictor`` is a :class:`PredictorKind` (a fresh
    predictor is built, ``model`` required for dynamic kinds) or an
    already-initialized predictor instance. ``rbar_out``, if given,
    collects the residual means alongside the returned points.
    """
    if not 0 <= start <= len(stream):
        raise ValueError(f"start index {start} outside stream of length {len(stream)}")
    if isinstance(predictor, PredictorKind):
        predictor = make_predictor(predictor, stream.family, model=model)
    predictor.warm_up(
        [(stream.snapshots[i].weights, stream.attributes[i].values) for i in range(start)]
    )
    points: list[ChartPoint] = []
    for idx in range(start, len(stream)):
        snap = stream.snapshots[idx]
        Xv = stream.attributes[idx].values
        w_pred = predictor.predict(Xv)
        r_bar = mean_residual(pearson_residuals(snap.weights, w_pred, stream.family))
        chart, point = ewma_step(chart, r_bar, t=snap.t)
        points.append(point)
        if rbar_out is not None:
            rbar_out.append(r_bar)
        predictor.observe(snap.weights, Xv)
    return points


def reference_sigma(
    stream: NetworkStream,
    predictor: PredictorKind | object,
    ref_start: int,
    ref_stop: int,
    model: StateSpaceModel | None = None,
    min_length: int = 30,
) -> float:
    """Estimate the in-control sd of the residual mean from a stream section.

    Runs a fresh predictor over the stream, warming on indices before
    ``ref_start`` and collecting residual means on [ref_start, ref_stop).
    """
    if not 0 <= ref_start < ref_stop <= len(stream):
        raise ValueError("reference window out of range")
    if isinstance(predictor, PredictorKind):
        predictor = make_predictor(predictor, stream.family, model=model)
    predictor.warm_up(
        [(stream.snapshots[i].weights, stream.attributes[i].values)
         for i in range(ref_start)]
    )
    rbars = []
    for idx in range(ref_start, ref_stop):
        snap = stream.snapshots[idx]
        Xv = stream.attributes[idx].values
        w_pred = predictor.predict(Xv)
        rbars.append(mean_residual(pearson_residuals(snap.weights, w_pred, stream.family)))
        predictor.observe(snap.weights, Xv)
    return estimate_sigma(rbars, min_length=min_length)


# ---------------------------------------------------------------------------
# Monte Carlo engine


def _seed_tuple(seed) -> tuple:
    if isinstance(seed, (tuple, list)):
        return tuple(int(v) for v in seed)
    return (int(seed),)


def _monitored_rbars(
    config: SimulationConfig,
    kind: PredictorKind,
    model: StateSpaceModel,
    start: int,
    seed,
    change: ChangeSpec | None = None,
) -> Iterator[tuple[int, float]]:
    """Lazily yield (t, residual mean) for the monitored part of one stream."""
    cfg = config.with_seed(_seed_tuple(seed))
    X, steps = stream_arrays(cfg, change)
    Xv = X.values
    family = cfg.family
    predictor = make_predictor(kind, family, model=model)
    warm: list[tuple[np.ndarray, np.ndarray]] = []
    for t, _beta, w in steps:
        if t <= start:
            warm.append((w, Xv))
            if t == start:
                predictor.warm_up(warm)
            continue
        w_pred = predictor.predict(Xv)
        yield t, mean_residual(pearson_residuals(w, w_pred, family))
        predictor.observe(w, Xv)


@dataclass(eq=False)
class CrossingProfiles:
    """In-control residual-mean paths, reusable across (l, lambda) choices.

    The EWMA path depends on lambda but not on l, and the reference spread
    s depends on neither, so one simulation pass supports the whole
    calibration search: for a given lambda the per-replication prefix
    maxima of |z_k| / f(k) determine the run length at any l by a simple
    threshold crossing. All replications share common random numbers
    across l, which also makes the estimated ARL monotone in l.
    """

    s: float
    rbar: np.ndarray  # (reps, horizon)
    start: int
    base_seed: int | tuple

    def __post_init__(self):
        self._profiles: dict[float, np.ndarray] = {}

    @property
    def reps(self) -> int:
        return self.rbar.shape[0]

    @property
    def horizon(self) -> int:
        return self.rbar.shape[1]

    def _profile(self, lam: float) -> np.ndarray:
        cached = self._profiles.get(lam)
        if cached is None:
            z = lfilter([lam], [1.0, -(1.0 - lam)], self.rbar, axis=1)
            factors = control_limit_factor(lam, np.arange(1, self.horizon + 1))
            cached = np.maximum.accumulate(np.abs(z) / factors, axis=1)
            self._profiles[lam] = cached
        return cached

    def run_lengths(self, lam: float, l: float) -> tuple[np.ndarray, np.ndarray]:
        """Per-replication run lengths at (lam, l); censored ones equal horizon."""
        prof = self._profile(lam)
        threshold = l * self.s
        hit = prof[:, -1] >= threshold
        first = np.argmax(prof >= threshold, axis=1) + 1
        rl = np.where(hit, first, self.horizon)
        return rl, ~hit

    def arl_at(self, lam: float, l: float) -> "ArlEstimate":
        rl, censored = self.run_lengths(lam, l)
        return ArlEstimate(
            arl=float(rl.mean()),
            serl=float(rl.std(ddof=1) / np.sqrt(self.reps)),
            reps=self.reps,
            censored_count=int(censored.sum()),
            discarded=0,
        )

    def calibrate_l(
        self,
        lam: float,
        target_arl0: float,
        tol: float = 0.05,
        l_range: tuple[float, float] = (0.5, 6.0),
    ) -> tuple[float, "ArlEstimate"]:
        """Bisect the limit multiplier until the estimated ARL0 meets the target.

        Raises :class:`CalibrationRangeError` when the bracket does not
        straddle the target. The estimated ARL is a step function of l, so
        if the bracket collapses without entering the +/- tol band the
        closest achievable point is returned (its achieved ARL is part of
        the result).
        """
        lo, hi = l_range
        est_lo = self.arl_at(lam, lo)
        est_hi = self.arl_at(lam, hi)
        if est_lo.arl > target_arl0:
            raise CalibrationRangeError(
                f"ARL0 at l={lo} is already {est_lo.arl:.1f} > target {target_arl0}"
            )
        if est_hi.arl < target_arl0:
            raise CalibrationRangeError(
                f"ARL0 at l={hi} is {est_hi.arl:.1f} < target {target_arl0}; "
                "increase the horizon or the bracket"
            )
        best = min(
            [(abs(est_lo.arl - target_arl0), lo, est_lo),
             (abs(est_hi.arl - target_arl0), hi, est_hi)]
        )
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            est = self.arl_at(lam, mid)
            if abs(est.arl - target_arl0) < best[0]:
                best = (abs(est.arl - target_arl0), mid, est)
            if abs(est.arl - target_arl0) <= tol * target_arl0:
                return mid, est
            if est.arl < target_arl0:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-6:
                break
        return best[1], best[2]


def collect_profiles(
    config: SimulationConfig,
    kind: PredictorKind,
    reps: int = 500,
    horizon: int = 2000,
    start: int = 10,
    base_seed: int | tuple = 0,
    model: StateSpaceModel | None = None,
) -> CrossingProfiles:
    """Simulate in-control replications once and keep their residual means.

    Replication 0 of the seed space is a long reference stream used only
    to estimate s; replications 1..reps feed the crossing profiles.
    """
    model = model or config.model
    cfg = config.with_length(start + horizon)
    base = _seed_tuple(base_seed)
    ref = [rb for _, rb in _monitored_rbars(cfg, kind, model, start, base + (0, 0))]
    s = estimate_sigma(ref)
    rbar = np.empty((reps, horizon))
    for i in range(reps):
        seed = base + (1 + i, 0)
        for j, (_, rb) in enumerate(_monitored_rbars(cfg, kind, model, start, seed)):
            rbar[i, j] = rb
    return CrossingProfiles(s=s, rbar=rbar, start=start, base_seed=base_seed)


@dataclass(frozen=True)
class CalibrationResult:
    """Calibrated (l, lambda) with the spread estimate and achieved ARL0."""

    lam: float
    l: float
    s: float
    arl0: float
    serl0: float
    reps: int
    horizon: int
    censored_count: int

    def chart(self) -> EwmaChart:
        return EwmaChart(lam=self.lam, l=self.l, s=self.s)


def calibrate(
    config: SimulationConfig,
    kind: PredictorKind,
    target_arl0: float = 200.0,
    lambdas: Sequence[float] = (0.05, 0.1, 0.2, 0.3),
    reps: int = 500,
    horizon: int = 2000,
    start: int = 10,
    base_seed: int | tuple = 0,
    tol: float = 0.05,
    model: StateSpaceModel | None = None,
    profiles: CrossingProfiles | None = None,
) -> list[CalibrationResult]:
    """Monte Carlo calibration of the chart over a grid of lambda values.

    For each lambda the limit multiplier is bisected on [0.5, 6] until the
    estimated in-control ARL is within ``tol`` of the target. One row per
    lambda is returned; pick the desired smoothing and use ``.chart()``.
    """
    if not np.isfinite(target_arl0) or target_arl0 <= 1:
        raise ValueError("target ARL0 must be a finite value > 1")
    if profiles is None:
        if reps < 2:
            raise ValueError("calibration needs at least 2 replications")
        profiles = collect_profiles(
            config, kind, reps=reps, horizon=horizon, start=start,
            base_seed=base_seed, model=model,
        )
    results = []
    for lam in lambdas:
        l, est = profiles.calibrate_l(lam, target_arl0, tol=tol)
        results.append(
            CalibrationResult(
                lam=lam, l=l, s=profiles.s, arl0=est.arl, serl0=est.serl,
                reps=profiles.reps, horizon=profiles.horizon,
                censored_count=est.censored_count,
            )
        )
    return results


@dataclass(frozen=True)
class RunLengthResult:
    """Run length of one replication; censored runs report rl = horizon."""

    rl: int
    censored: bool
    horizon: int


@dataclass(frozen=True)
class ArlEstimate:
    """Mean run length with its standard error and accounting counts."""

    arl: float
    serl: float
    reps: int
    censored_count: int
    discarded: int


def _run_length_once(
    config: SimulationConfig,
    kind: PredictorKind,
    chart: EwmaChart,
    model: StateSpaceModel,
    change: ChangeSpec | None,
    horizon: int,
    start: int,
    seed,
) -> RunLengthResult | None:
    """One replication; None signals a pre-change false alarm (discard)."""
    if change is None:
        length = start + horizon
    else:
        if change.tau <= start + 1:
            raise ValueError("change time must fall after the monitoring start")
        length = change.tau - 1 + horizon
    cfg = config.with_length(length)
    ch = chart
    for t, r_bar in _monitored_rbars(cfg, kind, model, start, seed, change):
        ch, point = ewma_step(ch, r_bar, t=t)
        if point.signal:
            if change is None:
                return RunLengthResult(rl=ch.steps, censored=False, horizon=horizon)
            if t < change.tau:
                return None
            return RunLengthResult(rl=t - change.tau + 1, censored=False, horizon=horizon)
    return RunLengthResult(rl=horizon, censored=True, horizon=horizon)


def run_length(
    config: SimulationConfig,
    kind: PredictorKind,
    chart: EwmaChart,
    change: ChangeSpec | None = None,
    horizon: int = 2000,
    start: int = 10,
    seed: int | tuple = 0,
    model: StateSpaceModel | None = None,
    max_attempts: int = 1000,
) -> RunLengthResult:
    """Run length of one replication, regenerating on pre-change false alarms."""
    model = model or config.model
    base = _seed_tuple(seed)
    for attempt in range(max_attempts):
        result = _run_length_once(
            config, kind, chart, model, change, horizon, start, base + (attempt,)
        )
        if result is not None:
            return result
    raise MonteCarloError(
        f"all {max_attempts} replications signaled before the change; "
        "the chart false-alarms too often for this design"
    )


def evaluate_arl1(
    config: SimulationConfig,
    kind: PredictorKind,
    chart: EwmaChart,
    change: ChangeSpec | None,
    reps: int = 500,
    horizon: int = 2000,
    start: int = 10,
    base_seed: int | tuple = 1000,
    model: StateSpaceModel | None = None,
    max_attempts: int = 1000,
) -> ArlEstimate:
    """Mean detection delay (or false-alarm ARL when ``change`` is None)."""
    model = model or config.model
    base = _seed_tuple(base_seed)
    rls = np.empty(reps)
    censored = 0
    discarded = 0
    for i in range(reps):
        result = None
        for attempt in range(max_attempts):
            result = _run_length_once(
                config, kind, chart, model, change, horizon, start,
                base + (1 + i, attempt),
            )
            if result is not None:
                break
            discarded += 1
        if result is None:
            raise MonteCarloError(
                f"replication {i} discarded {max_attempts} times "
                "(false alarm before the change every time)"
            )
        rls[i] = result.rl
        censored += int(result.censored)
    serl = float(rls.std(ddof=1) / np.sqrt(reps)) if reps > 1 else float("nan")
    return ArlEstimate(
        arl=float(rls.mean()), serl=serl, reps=reps,
        censored_count=censored, discarded=discarded,
    )
