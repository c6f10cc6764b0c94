"""File formats for streams, reports, and charts.

Snapshot streams are stored sparsely: a header line with the network
dimensions, then one CSV row per nonzero edge weight. Edge attributes live
in a companion file keyed by node pair. Reals are written with 17
significant digits so a write/read round trip is lossless.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, DimensionError
from .glm import EdgeFamily
from .monitoring import ArlEstimate, CalibrationResult, ChartPoint
from .network import (
    AttributeMatrix,
    NetworkSnapshot,
    NetworkStream,
    build_attribute_matrix,
    edge_count,
    edge_pairs,
)

SNAP_MAGIC = "#netspc-snapshots"
ATTR_MAGIC = "#netspc-attributes"


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _header_line(magic: str, fields: dict) -> str:
    tokens = " ".join(f"{k}={v}" for k, v in fields.items())
    return f"{magic} {tokens}\n"


def _parse_header(line: str, magic: str, path) -> dict:
    if not line.startswith(magic):
        raise ConfigError(f"{path}: expected header starting with {magic!r}")
    fields = {}
    for token in line[len(magic):].split():
        key, _, value = token.partition("=")
        fields[key] = value
    return fields


def write_stream(snap_path, attr_path, stream: NetworkStream) -> None:
    """Write a stream as a sparse snapshot file plus an attribute companion."""
    if len(stream) == 0:
        raise ValueError("cannot write an empty stream")
    n, directed, family, p = stream.n, stream.directed, stream.family, stream.p
    t0 = stream.snapshots[0].t
    columns = [f"x{k}" for k in range(1, p + 1)]
    i_arr, j_arr = edge_pairs(n, directed)
    with open(snap_path, "w", newline="") as fh:
        fh.write(_header_line(SNAP_MAGIC, {
            "v": 1, "n": n, "directed": int(directed), "family": family.value,
            "p": p, "t0": t0, "length": len(stream), "columns": ";".join(columns),
        }))
        fh.write("t,i,j,weight\n")
        for snap in stream.snapshots:
            nz = np.flatnonzero(snap.weights)
            for row in nz:
                fh.write(f"{snap.t},{i_arr[row]},{j_arr[row]},{int(snap.weights[row])}\n")
    write_attributes(attr_path, stream.attributes[0], columns)


def write_attributes(path, X: AttributeMatrix, columns: Sequence[str] | None = None) -> None:
    if columns is None:
        columns = [f"x{k}" for k in range(1, X.p + 1)]
    if len(columns) != X.p:
        raise DimensionError(f"{len(columns)} column names for p={X.p}")
    i_arr, j_arr = edge_pairs(X.n, X.directed)
    with open(path, "w", newline="") as fh:
        fh.write(_header_line(ATTR_MAGIC, {
            "v": 1, "n": X.n, "directed": int(X.directed), "p": X.p,
            "columns": ";".join(columns),
        }))
        fh.write("i,j," + ",".join(columns) + "\n" if columns else "i,j\n")
        for row in range(X.m):
            attrs = ",".join(fmt_float(v) for v in X.values[row, 1:])
            line = f"{i_arr[row]},{j_arr[row]}"
            fh.write(line + ("," + attrs if attrs else "") + "\n")


def read_attributes(path) -> AttributeMatrix:
    path = Path(path)
    with open(path) as fh:
        header = _parse_header(fh.readline(), ATTR_MAGIC, path)
        n = int(header["n"])
        directed = bool(int(header["directed"]))
        p = int(header["p"])
        fh.readline()  # column header
        attrs = {}
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2 + p:
                raise ConfigError(f"{path}: expected {2 + p} fields, got {len(parts)}")
            i, j = int(parts[0]), int(parts[1])
            attrs[(i, j)] = [float(v) for v in parts[2:]]
    if p == 0:
        # attrs still lists every edge; validate coverage through the builder
        return build_attribute_matrix(None, n, directed) if not attrs else \
            build_attribute_matrix({k: [] for k in attrs}, n, directed)
    return build_attribute_matrix(attrs, n, directed)


def read_stream(snap_path, attr_path) -> NetworkStream:
    """Load a stream written by :func:`write_stream`.

    Missing (t, i, j) rows mean weight zero; snapshots with no rows at all
    are kept as empty networks.
    """
    snap_path = Path(snap_path)
    X = read_attributes(attr_path)
    with open(snap_path) as fh:
        header = _parse_header(fh.readline(), SNAP_MAGIC, snap_path)
        n = int(header["n"])
        directed = bool(int(header["directed"]))
        family = EdgeFamily(header["family"])
        t0 = int(header["t0"])
        length = int(header["length"])
        if (X.n, X.directed) != (n, directed):
            raise ConfigError(f"{attr_path}: attribute file does not match snapshots")
        fh.readline()  # column header
        m = edge_count(n, directed)
        weights = np.zeros((length, m))
        seen = set()
        for line in fh:
            line = line.strip()
            if not line:
                continue
            t_s, i_s, j_s, w_s = line.split(",")
            t, i, j, w = int(t_s), int(i_s), int(j_s), float(w_s)
            if not t0 <= t < t0 + length:
                raise ConfigError(f"{snap_path}: time {t} outside [{t0}, {t0 + length})")
            row = X.index_of(i, j)
            if (t, row) in seen:
                raise ConfigError(f"{snap_path}: duplicate entry for t={t}, edge ({i},{j})")
            seen.add((t, row))
            weights[t - t0, row] = w
    snapshots = tuple(
        NetworkSnapshot(t=t0 + k, n=n, directed=directed, weights=weights[k], family=family)
        for k in range(length)
    )
    return NetworkStream(snapshots, tuple(X for _ in snapshots))


def write_betas(path, betas: np.ndarray, t0: int = 1) -> None:
    betas = np.atleast_2d(np.asarray(betas, dtype=float))
    with open(path, "w", newline="") as fh:
        fh.write("t," + ",".join(f"beta_{k}" for k in range(betas.shape[1])) + "\n")
        for k, row in enumerate(betas):
            fh.write(f"{t0 + k}," + ",".join(fmt_float(v) for v in row) + "\n")


def read_betas(path) -> tuple[np.ndarray, np.ndarray]:
    with open(path) as fh:
        reader = csv.reader(fh)
        next(reader)
        ts, rows = [], []
        for record in reader:
            ts.append(int(record[0]))
            rows.append([float(v) for v in record[1:]])
    return np.asarray(ts), np.asarray(rows)


def write_chart_report(path, points: Sequence[ChartPoint], rbars: Sequence[float]) -> None:
    """CSV of charted points: t, r_bar, z, ucl, lcl, signal."""
    if len(points) != len(rbars):
        raise DimensionError("one residual mean per chart point required")
    with open(path, "w", newline="") as fh:
        fh.write("t,r_bar,z,ucl,lcl,signal\n")
        for point, rb in zip(points, rbars):
            fh.write(
                f"{point.t},{fmt_float(rb)},{fmt_float(point.z)},"
                f"{fmt_float(point.ucl)},{fmt_float(point.lcl)},{int(point.signal)}\n"
            )


def read_chart_report(path) -> list[dict]:
    with open(path) as fh:
        reader = csv.DictReader(fh)
        rows = []
        for rec in reader:
            rows.append({
                "t": int(rec["t"]), "r_bar": float(rec["r_bar"]), "z": float(rec["z"]),
                "ucl": float(rec["ucl"]), "lcl": float(rec["lcl"]),
                "signal": bool(int(rec["signal"])),
            })
    return rows


def write_calibration_table(path, results: Iterable[CalibrationResult]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("lambda,l,s,arl0,serl0,reps,horizon,censored_count\n")
        for r in results:
            fh.write(
                f"{fmt_float(r.lam)},{fmt_float(r.l)},{fmt_float(r.s)},"
                f"{fmt_float(r.arl0)},{fmt_float(r.serl0)},{r.reps},"
                f"{r.horizon},{r.censored_count}\n"
            )


def read_calibration_table(path) -> list[dict]:
    with open(path) as fh:
        reader = csv.DictReader(fh)
        rows = []
        for rec in reader:
            rows.append({
                "lambda": float(rec["lambda"]), "l": float(rec["l"]), "s": float(rec["s"]),
                "arl0": float(rec["arl0"]), "serl0": float(rec["serl0"]),
                "reps": int(rec["reps"]), "horizon": int(rec["horizon"]),
                "censored_count": int(rec["censored_count"]),
            })
    return rows


def write_arl_table(path, rows: Iterable[dict]) -> None:
    """Run-length table rows: method, scenario, delta, arl, serl, reps, censored."""
    with open(path, "w", newline="") as fh:
        fh.write("method,scenario,delta,arl,serl,reps,censored_count\n")
        for row in rows:
            fh.write(
                f"{row['method']},{row['scenario']},{fmt_float(row['delta'])},"
                f"{fmt_float(row['arl'])},{fmt_float(row['serl'])},"
                f"{row['reps']},{row['censored_count']}\n"
            )


def arl_row(method: str, scenario: str, delta: float, est: ArlEstimate) -> dict:
    return {
        "method": method, "scenario": scenario, "delta": delta,
        "arl": est.arl, "serl": est.serl, "reps": est.reps,
        "censored_count": est.censored_count,
    }


# ---------------------------------------------------------------------------
# SVG rendering (static figures, deterministic output)


def _figure():
    import matplotlib
    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "netspc"
    return plt


def save_chart_svg(path, points: Sequence[ChartPoint], title: str = "EWMA chart") -> None:
    """Line chart of the EWMA statistic with its control limits."""
    plt = _figure()
    ts = [p.t for p in points]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(ts, [p.z for p in points], lw=1.2, color="tab:blue", label="z")
    ax.plot(ts, [p.ucl for p in points], lw=1.0, ls="--", color="tab:red", label="UCL/LCL")
    ax.plot(ts, [p.lcl for p in points], lw=1.0, ls="--", color="tab:red")
    alarms = [(p.t, p.z) for p in points if p.signal]
    if alarms:
        ax.scatter(*zip(*alarms), color="tab:red", s=18, zorder=3, label="signal")
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("t")
    ax.set_ylabel("EWMA of mean Pearson residual")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def save_arl_svg(path, deltas: Sequence[float], series: dict[str, Sequence[float]],
                 title: str = "Average run length") -> None:
    """ARL-versus-magnitude curves, one line per method."""
    plt = _figure()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for method, arls in series.items():
        ax.plot(deltas, arls, marker="o", ms=4, lw=1.2, label=method)
    ax.set_xlabel("change magnitude")
    ax.set_ylabel("ARL")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
