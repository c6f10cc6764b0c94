"""Command-line surface: simulate, ingest, fit-static, calibrate, monitor, benchmark.

Configuration is flat INI text with one section per concern ([simulate],
[model], [chart], [monitor], [calibrate], [benchmark], [ingest]); command
line flags override config values. Every command serializes the fully
resolved configuration next to its outputs as ``resolved.ini`` so a run
can be reproduced byte for byte from its own output directory.
"""

from __future__ import annotations

import argparse
import configparser
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io as nio
from .errors import ConfigError, NetspcError
from .glm import EdgeFamily, irwls_fit
from .filtering import StateSpaceModel
from .monitoring import (
    EwmaChart,
    PredictorKind,
    calibrate,
    evaluate_arl1,
    monitor_stream,
    reference_sigma,
)
from .network import (
    NetworkSnapshot,
    NetworkStream,
    accumulate_initial_window,
    build_attribute_matrix,
    edge_count,
    encode_role_pairs,
    role_pair_columns,
)
from .simulate import ChangeScenario, ChangeSpec, SimulationConfig, simulate_stream

SCALES = {"desk": (500, 2000), "paper": (2000, 5000)}

_REQUIRED = object()


class Settings:
    """Typed accessors over a ConfigParser with config-path error messages."""

    def __init__(self, parser: configparser.ConfigParser):
        self.parser = parser

    def _raw(self, section: str, key: str, default):
        if self.parser.has_option(section, key):
            return self.parser.get(section, key)
        if default is _REQUIRED:
            raise ConfigError(f"[{section}] {key}: required value is missing")
        return None

    def get(self, section, key, default=_REQUIRED, cast=str):
        raw = self._raw(section, key, default)
        if raw is None:
            return default
        try:
            return cast(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"[{section}] {key}: cannot parse {raw!r}") from exc

    def get_bool(self, section, key, default=_REQUIRED):
        raw = self._raw(section, key, default)
        if raw is None:
            return default
        if raw.strip().lower() in ("1", "true", "yes", "on"):
            return True
        if raw.strip().lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"[{section}] {key}: cannot parse boolean {raw!r}")

    def get_floats(self, section, key, default=_REQUIRED):
        raw = self._raw(section, key, default)
        if raw is None:
            return None if default is None else list(default)
        try:
            return [float(v) for v in raw.split(",") if v.strip() != ""]
        except ValueError as exc:
            raise ConfigError(f"[{section}] {key}: cannot parse float list {raw!r}") from exc

    def get_strs(self, section, key, default=_REQUIRED):
        raw = self._raw(section, key, default)
        if raw is None:
            return None if default is None else list(default)
        return [v.strip() for v in raw.split(",") if v.strip() != ""]


def load_settings(path: str | None) -> Settings:
    parser = configparser.ConfigParser(interpolation=None)
    if path is not None:
        read = parser.read(path)
        if not read:
            raise ConfigError(f"config file not found: {path}")
    return Settings(parser)


def _family(settings: Settings) -> EdgeFamily:
    name = settings.get("simulate", "family", default="bernoulli").lower()
    try:
        return EdgeFamily(name)
    except ValueError as exc:
        raise ConfigError(f"[simulate] family: unknown family {name!r}") from exc


def _vector(values: list[float] | None, dim: int, what: str) -> np.ndarray:
    if values is None:
        raise ConfigError(f"{what}: required value is missing")
    if len(values) == 1 and dim > 1:
        return np.full(dim, values[0])
    if len(values) != dim:
        raise ConfigError(f"{what}: expected {dim} values, got {len(values)}")
    return np.asarray(values, dtype=float)


def model_from_settings(settings: Settings, family: EdgeFamily,
                        dim: int | None = None) -> StateSpaceModel:
    f = settings.get_floats("model", "f_diag", default=[0.7])
    xi = settings.get_floats("model", "xi", default=[-0.6, 0.03, 0.0])
    q = settings.get_floats("model", "q_diag", default=[0.01, 0.0001, 0.05])
    if dim is None:
        dim = max(len(f), len(xi), len(q))
    return StateSpaceModel(
        F=np.diag(_vector(f, dim, "[model] f_diag")),
        xi=_vector(xi, dim, "[model] xi"),
        Q=np.diag(_vector(q, dim, "[model] q_diag")),
        family=family,
    )


def sim_config_from_settings(settings: Settings, seed) -> SimulationConfig:
    family = _family(settings)
    model = model_from_settings(settings, family)
    beta0 = settings.get_floats("simulate", "beta0", default=[-1.0, 0.05, 0.0])
    try:
        return SimulationConfig(
            n=settings.get("simulate", "n", default=50, cast=int),
            family=family,
            beta0=_vector(beta0, model.dim, "[simulate] beta0"),
            model=model,
            length=settings.get("simulate", "length", default=100, cast=int),
            member_count=settings.get("simulate", "members", default=5, cast=int),
            age_range=(
                settings.get("simulate", "age_low", default=20, cast=int),
                settings.get("simulate", "age_high", default=40, cast=int),
            ),
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(f"[simulate] {exc}") from exc


def change_from_settings(settings: Settings) -> ChangeSpec | None:
    name = settings.get("simulate", "change", default="none").lower()
    if name in ("none", ""):
        return None
    try:
        scenario = ChangeScenario(name)
    except ValueError as exc:
        raise ConfigError(f"[simulate] change: unknown scenario {name!r}") from exc
    sign_raw = settings.get("simulate", "sign", default="auto")
    sign = None if sign_raw == "auto" else float(sign_raw)
    try:
        return ChangeSpec(
            scenario=scenario,
            tau=settings.get("simulate", "tau", default=50, cast=int),
            delta=settings.get("simulate", "delta", default=1.0, cast=float),
            sign=sign,
            sigma_mode=settings.get("simulate", "sigma_mode", default="fixed"),
        )
    except ValueError as exc:
        raise ConfigError(f"[simulate] change: {exc}") from exc


def predictor_from_settings(settings: Settings, section: str = "monitor") -> PredictorKind:
    name = settings.get(section, "predictor", default="dynamic").lower()
    window = settings.get(section, "window", default=5, cast=int)
    return _predictor_kind(name, window)


def _predictor_kind(name: str, window: int = 5) -> PredictorKind:
    try:
        if name == "dynamic":
            return PredictorKind.dynamic()
        if name == "dynamic-approx":
            return PredictorKind.dynamic(update="approx")
        if name == "static":
            return PredictorKind.static()
        if name == "sliding":
            return PredictorKind.sliding(window)
    except ValueError as exc:
        raise ConfigError(f"predictor: {exc}") from exc
    raise ConfigError(f"unknown predictor {name!r}")


def _resolve_scale(args, settings: Settings) -> tuple[int, int]:
    scale = args.scale or settings.get("run", "scale", default="desk")
    if scale not in SCALES:
        raise ConfigError(f"--scale must be one of {sorted(SCALES)}, got {scale!r}")
    reps, horizon = SCALES[scale]
    if args.reps is not None:
        reps = args.reps
    if args.horizon is not None:
        horizon = args.horizon
    return reps, horizon


def _resolve_seed(args, settings: Settings) -> int:
    if args.seed is not None:
        return args.seed
    return settings.get("run", "seed", default=0, cast=int)


def _out_dir(args) -> Path:
    if not args.out:
        raise ConfigError("--out directory is required for this command")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _echo_config(out: Path, sections: dict[str, dict]) -> None:
    parser = configparser.ConfigParser(interpolation=None)
    for section, values in sections.items():
        parser[section] = {
            k: (nio.fmt_float(v) if isinstance(v, float)
                else ", ".join(nio.fmt_float(x) for x in v) if isinstance(v, (list, tuple))
                else str(v))
            for k, v in values.items()
        }
    with open(out / "resolved.ini", "w") as fh:
        parser.write(fh)


def _sim_echo_sections(config: SimulationConfig, change: ChangeSpec | None,
                       seed: int) -> dict:
    sections = {
        "run": {"seed": seed},
        "simulate": {
            "family": config.family.value,
            "n": config.n,
            "length": config.length,
            "members": config.member_count,
            "age_low": config.age_range[0],
            "age_high": config.age_range[1],
            "beta0": list(config.beta0),
            "change": change.scenario.value if change else "none",
        },
        "model": {
            "f_diag": list(np.diag(config.model.F)),
            "xi": list(config.model.xi),
            "q_diag": list(np.diag(config.model.Q)),
        },
    }
    if change is not None:
        sections["simulate"].update({
            "tau": change.tau,
            "delta": change.delta,
            "sign": "auto" if change.sign is None else change.sign,
            "sigma_mode": change.sigma_mode,
        })
    return sections


# ---------------------------------------------------------------------------
# Commands


def cmd_simulate(args) -> int:
    settings = load_settings(args.config)
    seed = _resolve_seed(args, settings)
    config = sim_config_from_settings(settings, seed)
    change = change_from_settings(settings)
    if change is not None and change.tau >= config.length:
        raise ConfigError("[simulate] tau: change time must fall inside the stream")
    out = _out_dir(args)
    stream, betas = simulate_stream(config, change)
    nio.write_stream(out / "snapshots.csv", out / "attributes.csv", stream)
    nio.write_betas(out / "true_beta.csv", betas, t0=1)
    _echo_config(out, _sim_echo_sections(config, change, seed))
    print(f"simulate: wrote {len(stream)} snapshots "
          f"(n={config.n}, family={config.family.value}) to {out}")
    return 0


def _read_nodes(path, roles_filter: list[str] | None):
    order: list[str] = []
    roles: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2:
                raise ConfigError(f"{path}: expected 'node_id, role', got {line!r}")
            if parts[0].lower() in ("node_id", "node") and parts[1].lower() == "role":
                continue
            node, role = parts
            if node in roles:
                raise ConfigError(f"{path}: duplicate node id {node!r}")
            roles[node] = role
            order.append(node)
    if roles_filter is not None:
        order = [node for node in order if roles[node] in roles_filter]
    return order, roles


def _read_events(path):
    events = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if parts[0].lower() in ("timestamp", "ts"):
                continue
            if len(parts) not in (3, 4):
                raise ConfigError(
                    f"{path}: expected 'timestamp, src, dst[, weight]', got {line!r}"
                )
            weight = float(parts[3]) if len(parts) == 4 else 1.0
            events.append((float(parts[0]), parts[1], parts[2], weight))
    return events


def cmd_ingest(args) -> int:
    settings = load_settings(args.config)
    events_path = args.events or settings.get("ingest", "events")
    nodes_path = args.nodes or settings.get("ingest", "nodes")
    period = args.period if args.period is not None else settings.get(
        "ingest", "period", default=1.0, cast=float)
    t0_window = args.t0 if args.t0 is not None else settings.get(
        "ingest", "t0", default=0, cast=int)
    roles_filter = (args.roles.split(",") if args.roles
                    else settings.get_strs("ingest", "roles", default=None))
    if roles_filter is not None:
        roles_filter = [r.strip() for r in roles_filter]
    family_name = settings.get("ingest", "family", default="bernoulli").lower()
    try:
        family = EdgeFamily(family_name)
    except ValueError as exc:
        raise ConfigError(f"[ingest] family: unknown family {family_name!r}") from exc
    if period <= 0:
        raise ConfigError("[ingest] period: must be > 0")

    node_order, node_roles = _read_nodes(nodes_path, roles_filter)
    if len(node_order) < 2:
        raise ConfigError(f"{nodes_path}: need at least two nodes after role filtering")
    index = {node: i for i, node in enumerate(node_order)}
    role_set = []
    for node in node_order:
        if node_roles[node] not in role_set:
            role_set.append(node_roles[node])
    if roles_filter is not None:
        role_set = [r for r in roles_filter if r in set(role_set)]

    events = _read_events(events_path)
    if not events:
        raise ConfigError(f"{events_path}: no events found")
    timestamps = [e[0] for e in events]
    if any(b < a for a, b in zip(timestamps, timestamps[1:])):
        warnings.warn("event timestamps are unordered; sorting", stacklevel=2)
        events.sort(key=lambda e: e[0])
    dropped = 0
    known = set(node_roles)
    ts_min = events[0][0]
    n = len(node_order)
    bins: dict[int, dict[tuple[int, int], float]] = {}
    last_bin = 0
    for ts, src, dst, weight in events:
        if src not in known or dst not in known:
            raise ConfigError(
                f"{events_path}: node {src if src not in known else dst!r} "
                "has no role entry (node set is fixed over the stream)"
            )
        if src not in index or dst not in index:
            dropped += 1
            continue
        if src == dst:
            dropped += 1
            continue
        b = int((ts - ts_min) // period)
        last_bin = max(last_bin, b)
        edges = bins.setdefault(b, {})
        key = (index[src], index[dst])
        edges[key] = edges.get(key, 0.0) + weight

    m = edge_count(n, directed=True)
    snapshots = []
    from .network import edge_index as _edge_index
    for b in range(last_bin + 1):
        weights = np.zeros(m)
        for (i, j), w in bins.get(b, {}).items():
            row = _edge_index(i, j, n, True)
            weights[row] = 1.0 if family is EdgeFamily.BERNOULLI else float(round(w))
        snapshots.append(NetworkSnapshot(t=b, n=n, directed=True,
                                         weights=weights, family=family))
    if t0_window > 0:
        if t0_window > len(snapshots):
            raise ConfigError("[ingest] t0: window exceeds the number of periods")
        head = accumulate_initial_window(snapshots[:t0_window])
        snapshots = [head] + snapshots[t0_window:]

    attrs = {}
    for i, a in enumerate(node_order):
        for j, bnode in enumerate(node_order):
            if i != j:
                attrs[(i, j)] = encode_role_pairs(
                    node_roles[a], node_roles[bnode], role_set)
    X = build_attribute_matrix(attrs, n, directed=True)
    stream = NetworkStream(tuple(snapshots), tuple(X for _ in snapshots))

    out = _out_dir(args)
    nio.write_stream(out / "snapshots.csv", out / "attributes.csv", stream)
    nio.write_attributes(out / "attributes.csv", X, role_pair_columns(role_set))
    with open(out / "nodes.csv", "w") as fh:
        fh.write("index,node_id,role\n")
        for node, i in index.items():
            fh.write(f"{i},{node},{node_roles[node]}\n")
    _echo_config(out, {
        "run": {"seed": _resolve_seed(args, settings)},
        "ingest": {
            "events": str(events_path), "nodes": str(nodes_path),
            "period": float(period), "t0": t0_window,
            "family": family.value, "roles": ", ".join(role_set),
        },
    })
    print(f"ingest: {len(stream)} snapshots over {n} nodes "
          f"({dropped} events dropped by filtering) -> {out}")
    return 0


def _load_stream(args) -> NetworkStream:
    if not args.snapshots or not args.attributes:
        raise ConfigError("--snapshots and --attributes files are required")
    return nio.read_stream(args.snapshots, args.attributes)


def cmd_fit_static(args) -> int:
    stream = _load_stream(args)
    times = [s.t for s in stream.snapshots]
    t = args.t if args.t is not None else times[-1]
    if t not in times:
        raise ConfigError(f"--t {t}: no snapshot at that time (have {times[0]}..{times[-1]})")
    idx = times.index(t)
    snap, X = stream[idx]
    fit = irwls_fit(X.values, snap.weights, stream.family)
    se = np.sqrt(np.diag(fit.covariance))
    print(f"static GLM fit at t={t} (family={stream.family.value}, "
          f"m={snap.m}, p={X.p})")
    print(f"{'coef':>8} {'estimate':>14} {'std_err':>14}")
    for k, (b, s) in enumerate(zip(fit.beta_hat, se)):
        print(f"{'beta_' + str(k):>8} {b:>14.6f} {s:>14.6f}")
    print(f"log-likelihood {fit.final_loglik:.6f}  iterations {fit.iterations}  "
          f"converged {fit.converged}")
    if args.out:
        out = _out_dir(args)
        with open(out / "fit.csv", "w") as fh:
            fh.write("coef,estimate,std_err\n")
            for k, (b, s) in enumerate(zip(fit.beta_hat, se)):
                fh.write(f"beta_{k},{nio.fmt_float(b)},{nio.fmt_float(s)}\n")
    return 0


def cmd_calibrate(args) -> int:
    settings = load_settings(args.config)
    seed = _resolve_seed(args, settings)
    reps, horizon = _resolve_scale(args, settings)
    config = sim_config_from_settings(settings, seed)
    kind = predictor_from_settings(settings, section="calibrate")
    target = settings.get("calibrate", "target_arl0", default=200.0, cast=float)
    if not np.isfinite(target) or target <= 1:
        raise ConfigError("[calibrate] target_arl0: must be finite and > 1")
    lambdas = settings.get_floats("calibrate", "lambdas", default=[0.05, 0.1, 0.2, 0.3])
    start = settings.get("calibrate", "start", default=10, cast=int)
    out = _out_dir(args)
    results = calibrate(
        config, kind, target_arl0=target, lambdas=lambdas,
        reps=reps, horizon=horizon, start=start, base_seed=seed,
    )
    nio.write_calibration_table(out / "calibration.csv", results)
    _echo_config(out, {
        **_sim_echo_sections(config, None, seed),
        "calibrate": {
            "predictor": kind.label, "target_arl0": target,
            "lambdas": lambdas, "start": start,
            "reps": reps, "horizon": horizon,
        },
    })
    print(f"calibrate: predictor={kind.label} target ARL0={target:g} "
          f"({reps} reps, horizon {horizon})")
    for r in results:
        print(f"  lambda={r.lam:g}  l={r.l:.4f}  s={r.s:.6f}  "
              f"ARL0={r.arl0:.1f} (se {r.serl0:.2f}, censored {r.censored_count})")
    return 0


def cmd_monitor(args) -> int:
    settings = load_settings(args.config)
    stream = _load_stream(args)
    kind = predictor_from_settings(settings)
    model = None
    if kind.kind == "dynamic":
        model = model_from_settings(settings, stream.family, dim=stream.p + 1)
    start = args.start if args.start is not None else settings.get(
        "monitor", "start", default=10, cast=int)
    if not 0 < start < len(stream):
        raise ConfigError(f"[monitor] start: must be inside the stream (0, {len(stream)})")
    lam = settings.get("chart", "lambda", default=0.1, cast=float)
    l = settings.get("chart", "l", default=2.44, cast=float)
    s_value = settings.get("chart", "s", default=None, cast=float)
    if s_value is None and args.calibration:
        rows = nio.read_calibration_table(args.calibration)
        match = [r for r in rows if abs(r["lambda"] - lam) < 1e-12] or rows
        lam, l, s_value = match[0]["lambda"], match[0]["l"], match[0]["s"]
    if s_value is None:
        ref_start = settings.get("monitor", "s_from", default=1, cast=int)
        min_points = settings.get("monitor", "s_min_points", default=30, cast=int)
        s_value = reference_sigma(
            stream, kind, ref_start, start, model=model, min_length=min_points)
    chart = EwmaChart(lam=lam, l=l, s=s_value)
    rbars: list[float] = []
    points = monitor_stream(stream, kind, chart, start, model=model, rbar_out=rbars)
    out = _out_dir(args)
    nio.write_chart_report(out / "chart.csv", points, rbars)
    nio.save_chart_svg(out / "chart.svg", points,
                       title=f"EWMA chart ({kind.label} predictor)")
    alarms = [p.t for p in points if p.signal]
    sections = {
        "run": {"seed": _resolve_seed(args, settings)},
        "chart": {"lambda": lam, "l": l, "s": s_value},
        "monitor": {"predictor": kind.label, "start": start},
    }
    if model is not None:
        sections["model"] = {
            "f_diag": list(np.diag(model.F)), "xi": list(model.xi),
            "q_diag": list(np.diag(model.Q)),
        }
    _echo_config(out, sections)
    if alarms:
        print(f"monitor: {len(alarms)} signal(s); first at t={alarms[0]} "
              f"(alarm times: {alarms})")
        return 1
    print(f"monitor: no signals over {len(points)} charted snapshots")
    return 0


def cmd_benchmark(args) -> int:
    settings = load_settings(args.config)
    seed = _resolve_seed(args, settings)
    reps, horizon = _resolve_scale(args, settings)
    config = sim_config_from_settings(settings, seed)
    method_names = settings.get_strs(
        "benchmark", "methods", default=["dynamic", "sliding", "static"])
    scenario_names = settings.get_strs(
        "benchmark", "scenarios", default=["global", "local"])
    deltas = settings.get_floats(
        "benchmark", "deltas", default=[0.5, 1.0, 1.5, 2.0, 2.5, 3.0])
    target = settings.get("benchmark", "target_arl0", default=200.0, cast=float)
    tau = settings.get("benchmark", "tau", default=50, cast=int)
    start = settings.get("benchmark", "start", default=10, cast=int)
    window = settings.get("benchmark", "window", default=5, cast=int)
    sigma_mode = settings.get("benchmark", "sigma_mode", default="fixed")
    default_lambdas = {"dynamic": 0.1, "dynamic-approx": 0.1, "sliding": 0.1, "static": 0.3}
    out = _out_dir(args)

    calibrations = {}
    for mi, name in enumerate(method_names):
        kind = _predictor_kind(name, window)
        lam = settings.get("benchmark", f"lambda_{name.replace('-', '_')}",
                           default=default_lambdas.get(name, 0.1), cast=float)
        result = calibrate(
            config, kind, target_arl0=target, lambdas=[lam],
            reps=reps, horizon=horizon, start=start, base_seed=(seed, mi),
        )[0]
        calibrations[name] = (kind, result)
        print(f"benchmark: calibrated {name}: lambda={result.lam:g} l={result.l:.4f} "
              f"s={result.s:.6f} ARL0={result.arl0:.1f}")
    nio.write_calibration_table(
        out / "calibration.csv", [r for _, r in calibrations.values()])

    for si, scenario_name in enumerate(scenario_names):
        try:
            scenario = ChangeScenario(scenario_name)
        except ValueError as exc:
            raise ConfigError(f"[benchmark] scenarios: unknown {scenario_name!r}") from exc
        rows = []
        series = {name: [] for name in method_names}
        for mi, name in enumerate(method_names):
            kind, calib = calibrations[name]
            for di, delta in enumerate(deltas):
                change = ChangeSpec(scenario=scenario, tau=tau, delta=delta,
                                    sigma_mode=sigma_mode)
                est = evaluate_arl1(
                    config, kind, calib.chart(), change,
                    reps=reps, horizon=horizon, start=start,
                    base_seed=(seed, 100 + si, mi, di),
                )
                rows.append(nio.arl_row(name, scenario.value, delta, est))
                series[name].append(est.arl)
                print(f"benchmark: {scenario.value} {name} delta={delta:g}: "
                      f"ARL1={est.arl:.2f} (se {est.serl:.3f})")
        nio.write_arl_table(out / f"benchmark_{scenario.value}.csv", rows)
        nio.save_arl_svg(
            out / f"benchmark_{scenario.value}.svg", deltas, series,
            title=f"ARL vs change magnitude ({config.family.value}, {scenario.value})",
        )

    _echo_config(out, {
        **_sim_echo_sections(config, None, seed),
        "benchmark": {
            "methods": ", ".join(method_names),
            "scenarios": ", ".join(scenario_names),
            "deltas": deltas, "target_arl0": target, "tau": tau,
            "start": start, "window": window, "reps": reps, "horizon": horizon,
            "sigma_mode": sigma_mode,
        },
    })
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI configuration file")
    common.add_argument("--out", help="output directory")
    common.add_argument("--seed", type=int, help="base random seed")
    common.add_argument("--reps", type=int, help="Monte Carlo replications")
    common.add_argument("--horizon", type=int, help="Monte Carlo horizon (chart points)")
    common.add_argument("--scale", choices=sorted(SCALES),
                        help="preset for reps/horizon (desk: 500/2000, paper: 2000/5000)")

    parser = argparse.ArgumentParser(
        prog="netspc",
        description="Model attributed network streams and monitor them for abrupt change.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common],
                       help="generate a synthetic stream and write it to disk")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ingest", parents=[common],
                       help="bin an edge-event log into a snapshot stream")
    p.add_argument("--events", help="event file: timestamp, src, dst[, weight]")
    p.add_argument("--nodes", help="node attribute file: node_id, role")
    p.add_argument("--period", type=float, help="snapshot period length")
    p.add_argument("--t0", type=int, help="initial window to aggregate into one snapshot")
    p.add_argument("--roles", help="comma-separated role filter")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("fit-static", parents=[common],
                       help="fit the GLM on a single snapshot")
    p.add_argument("--snapshots", help="snapshot file")
    p.add_argument("--attributes", help="attribute companion file")
    p.add_argument("--t", type=int, help="snapshot time (default: last)")
    p.set_defaults(func=cmd_fit_static)

    p = sub.add_parser("calibrate", parents=[common],
                       help="Monte Carlo calibration of the chart limits")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("monitor", parents=[common],
                       help="chart a snapshot stream; exit 1 if it signals")
    p.add_argument("--snapshots", help="snapshot file")
    p.add_argument("--attributes", help="attribute companion file")
    p.add_argument("--start", type=int, help="stream index where charting begins")
    p.add_argument("--calibration", help="calibration.csv to take (l, lambda, s) from")
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("benchmark", parents=[common],
                       help="run-length comparison of predictors over change grids")
    p.set_defaults(func=cmd_benchmark)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NetspcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
