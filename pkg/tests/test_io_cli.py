import numpy as np
import pytest

import netspc.io as nio
from netspc import (
    EdgeFamily,
    EwmaChart,
    NetworkSnapshot,
    NetworkStream,
    PredictorKind,
    SimulationConfig,
    build_attribute_matrix,
    monitor_stream,
    simulate_stream,
)
from netspc.cli import main


def small_sim_ini(tmp_path, extra="", length=60, seed=3, n=10):
    cfg = tmp_path / "config.ini"
    cfg.write_text(
        "[run]\n"
        f"seed = {seed}\n"
        "[simulate]\n"
        "family = bernoulli\n"
        f"n = {n}\n"
        f"length = {length}\n"
        "members = 2\n"
        "[model]\n"
        "f_diag = 0.7, 0.7, 0.7\n"
        "xi = -0.6, 0.03, 0\n"
        "q_diag = 0.01, 0.0001, 0.05\n"
        + extra
    )
    return cfg


class TestStreamFiles:
    @pytest.mark.parametrize("family", [EdgeFamily.BERNOULLI, EdgeFamily.POISSON])
    def test_round_trip_exact(self, tmp_path, family):
        cfg = SimulationConfig(n=8, length=7, seed=1, family=family)
        stream, _ = simulate_stream(cfg)
        nio.write_stream(tmp_path / "snap.csv", tmp_path / "attr.csv", stream)
        loaded = nio.read_stream(tmp_path / "snap.csv", tmp_path / "attr.csv")
        assert len(loaded) == len(stream)
        assert loaded.family is family
        assert np.array_equal(loaded.attributes[0].values, stream.attributes[0].values)
        for a, b in zip(loaded.snapshots, stream.snapshots):
            assert a.t == b.t
            assert np.array_equal(a.weights, b.weights)

    def test_round_trip_full_precision_attributes(self, tmp_path):
        attrs = {(0, 1): [np.pi, 1 / 3], (1, 0): [np.e, 2 / 7]}
        X = build_attribute_matrix(attrs, 2, directed=True)
        snap = NetworkSnapshot(t=0, n=2, directed=True, weights=np.array([1.0, 0.0]),
                               family=EdgeFamily.BERNOULLI)
        stream = NetworkStream((snap,), (X,))
        nio.write_stream(tmp_path / "s.csv", tmp_path / "a.csv", stream)
        loaded = nio.read_stream(tmp_path / "s.csv", tmp_path / "a.csv")
        assert np.array_equal(loaded.attributes[0].values, X.values)

    def test_empty_snapshots_kept(self, tmp_path):
        X = build_attribute_matrix(None, 3, directed=True)
        snaps = tuple(
            NetworkSnapshot(t=t, n=3, directed=True, weights=np.zeros(6),
                            family=EdgeFamily.BERNOULLI)
            for t in range(3)
        )
        stream = NetworkStream(snaps, (X, X, X))
        nio.write_stream(tmp_path / "s.csv", tmp_path / "a.csv", stream)
        loaded = nio.read_stream(tmp_path / "s.csv", tmp_path / "a.csv")
        assert len(loaded) == 3
        assert all(s.weights.sum() == 0 for s in loaded.snapshots)

    def test_betas_round_trip(self, tmp_path):
        betas = np.array([[np.pi, -1 / 3], [0.25, 1e-17]])
        nio.write_betas(tmp_path / "b.csv", betas, t0=5)
        ts, loaded = nio.read_betas(tmp_path / "b.csv")
        assert np.array_equal(ts, [5, 6])
        assert np.array_equal(loaded, betas)


class TestCmdSimulate:
    def test_writes_outputs_and_is_deterministic(self, tmp_path):
        cfg = small_sim_ini(tmp_path)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        assert main(["simulate", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["simulate", "--config", str(cfg), "--out", str(out2)]) == 0
        for name in ("snapshots.csv", "attributes.csv", "true_beta.csv", "resolved.ini"):
            assert (out1 / name).exists()
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_rerun_from_echoed_config_is_identical(self, tmp_path):
        cfg = small_sim_ini(tmp_path)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        main(["simulate", "--config", str(cfg), "--out", str(out1)])
        assert main(["simulate", "--config", str(out1 / "resolved.ini"),
                     "--out", str(out2)]) == 0
        for name in ("snapshots.csv", "attributes.csv", "true_beta.csv", "resolved.ini"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_invalid_length_fails_before_writing(self, tmp_path):
        cfg = small_sim_ini(tmp_path, length=0)
        out = tmp_path / "r"
        assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == 2
        assert not (out / "snapshots.csv").exists()

    def test_seed_flag_overrides_config(self, tmp_path):
        cfg = small_sim_ini(tmp_path, seed=3)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        main(["simulate", "--config", str(cfg), "--out", str(out1), "--seed", "9"])
        main(["simulate", "--config", str(cfg), "--out", str(out2)])
        assert ((out1 / "snapshots.csv").read_bytes()
                != (out2 / "snapshots.csv").read_bytes())


def write_events(tmp_path, rows, nodes):
    events = tmp_path / "events.csv"
    events.write_text("timestamp,src,dst\n" +
                      "\n".join(",".join(str(v) for v in r) for r in rows) + "\n")
    nodes_file = tmp_path / "nodes.csv"
    nodes_file.write_text("node_id,role\n" +
                          "\n".join(f"{n},{r}" for n, r in nodes) + "\n")
    return events, nodes_file


class TestCmdIngest:
    NODES = [("a", "CEO"), ("b", "P"), ("c", "MR"), ("d", "P")]

    def test_single_event_single_edge(self, tmp_path):
        events, nodes = write_events(tmp_path, [(1, "a", "b")], self.NODES)
        out = tmp_path / "out"
        assert main(["ingest", "--events", str(events), "--nodes", str(nodes),
                     "--period", "1", "--out", str(out)]) == 0
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert len(stream) == 1
        assert stream.snapshots[0].weights.sum() == 1.0
        assert stream.p == 15  # 4 roles would give 16 pairs; 3 distinct -> 9-1... see below

    def test_role_pair_design_dimensions(self, tmp_path):
        # roles CEO, P, MR -> 9 ordered pairs -> 8 dummies + intercept
        events, nodes = write_events(tmp_path, [(1, "a", "b")],
                                     [("a", "CEO"), ("b", "P"), ("c", "MR")])
        out = tmp_path / "out"
        main(["ingest", "--events", str(events), "--nodes", str(nodes),
              "--period", "1", "--out", str(out)])
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert stream.p == 8
        assert stream.attributes[0].values.shape == (6, 9)

    def test_ten_weeks_ten_snapshots(self, tmp_path):
        rows = [(week, "a", "b") for week in range(10)]
        events, nodes = write_events(tmp_path, rows, self.NODES)
        out = tmp_path / "out"
        main(["ingest", "--events", str(events), "--nodes", str(nodes),
              "--period", "1", "--out", str(out)])
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert len(stream) == 10

    def test_role_filter_restricts_nodes(self, tmp_path):
        rows = [(0, "a", "b"), (0, "a", "c"), (1, "c", "a")]
        events, nodes = write_events(tmp_path, rows, self.NODES)
        out = tmp_path / "out"
        main(["ingest", "--events", str(events), "--nodes", str(nodes),
              "--period", "1", "--roles", "CEO,MR", "--out", str(out)])
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert stream.n == 2  # nodes a and c
        # only the a<->c events survive
        assert stream.snapshots[0].weights.sum() == 1.0
        assert stream.snapshots[1].weights.sum() == 1.0

    def test_unknown_node_rejected(self, tmp_path):
        events, nodes = write_events(tmp_path, [(0, "a", "zz")], self.NODES)
        out = tmp_path / "out"
        assert main(["ingest", "--events", str(events), "--nodes", str(nodes),
                     "--period", "1", "--out", str(out)]) == 2

    def test_unordered_timestamps_warn_and_sort(self, tmp_path):
        rows = [(5, "a", "b"), (1, "b", "a")]
        events, nodes = write_events(tmp_path, rows, self.NODES)
        out = tmp_path / "out"
        with pytest.warns(UserWarning):
            assert main(["ingest", "--events", str(events), "--nodes", str(nodes),
                         "--period", "1", "--out", str(out)]) == 0
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert len(stream) == 5

    def test_initial_window_aggregation(self, tmp_path):
        rows = [(0, "a", "b"), (1, "b", "c"), (2, "c", "d"), (3, "d", "a")]
        events, nodes = write_events(tmp_path, rows, self.NODES)
        out = tmp_path / "out"
        main(["ingest", "--events", str(events), "--nodes", str(nodes),
              "--period", "1", "--t0", "3", "--out", str(out)])
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert len(stream) == 2  # aggregate of first 3 periods + period 3
        assert stream.snapshots[0].weights.sum() == 3.0

    def test_poisson_weights_summed(self, tmp_path):
        events = tmp_path / "events.csv"
        events.write_text("0,a,b,2\n0.5,a,b,3\n")
        nodes = tmp_path / "nodes.csv"
        nodes.write_text("a,CEO\nb,P\n")
        out = tmp_path / "out"
        cfgfile = tmp_path / "c.ini"
        cfgfile.write_text("[ingest]\nfamily = poisson\n")
        main(["ingest", "--config", str(cfgfile), "--events", str(events),
              "--nodes", str(nodes), "--period", "1", "--out", str(out)])
        stream = nio.read_stream(out / "snapshots.csv", out / "attributes.csv")
        assert stream.family is EdgeFamily.POISSON
        assert stream.snapshots[0].weights.max() == 5.0


class TestCmdFitStatic:
    def test_prints_fit(self, tmp_path, capsys):
        cfg = small_sim_ini(tmp_path, length=5)
        out = tmp_path / "sim"
        main(["simulate", "--config", str(cfg), "--out", str(out)])
        code = main(["fit-static", "--snapshots", str(out / "snapshots.csv"),
                     "--attributes", str(out / "attributes.csv"), "--t", "3"])
        assert code == 0
        captured = capsys.readouterr().out
        assert "beta_0" in captured and "converged" in captured

    def test_missing_time_rejected(self, tmp_path):
        cfg = small_sim_ini(tmp_path, length=5)
        out = tmp_path / "sim"
        main(["simulate", "--config", str(cfg), "--out", str(out)])
        assert main(["fit-static", "--snapshots", str(out / "snapshots.csv"),
                     "--attributes", str(out / "attributes.csv"), "--t", "99"]) == 2


class TestCmdMonitor:
    def _simulated(self, tmp_path, extra=""):
        cfg = small_sim_ini(tmp_path, extra=extra)
        out = tmp_path / "sim"
        main(["simulate", "--config", str(cfg), "--out", str(out)])
        return cfg, out

    def test_round_trip_matches_in_memory(self, tmp_path):
        cfg, sim = self._simulated(tmp_path)
        mon = tmp_path / "mon"
        monitor_ini = tmp_path / "monitor.ini"
        monitor_ini.write_text(
            "[model]\nf_diag = 0.7\nxi = -0.6, 0.03, 0\nq_diag = 0.01, 0.0001, 0.05\n"
            "[chart]\nlambda = 0.1\nl = 3.0\ns = 0.11\n"
            "[monitor]\npredictor = dynamic\nstart = 10\n"
        )
        code = main(["monitor", "--config", str(monitor_ini),
                     "--snapshots", str(sim / "snapshots.csv"),
                     "--attributes", str(sim / "attributes.csv"),
                     "--out", str(mon)])
        rows = nio.read_chart_report(mon / "chart.csv")
        # in-memory reference
        config = SimulationConfig(n=10, length=60, member_count=2, seed=3)
        stream, _ = simulate_stream(config)
        rbars = []
        points = monitor_stream(stream, PredictorKind.dynamic(),
                                EwmaChart(0.1, 3.0, 0.11), start=10,
                                model=config.model, rbar_out=rbars)
        assert len(rows) == len(points)
        for row, point, rb in zip(rows, points, rbars):
            assert row["t"] == point.t
            assert row["z"] == point.z  # exact: 17-digit round trip
            assert row["r_bar"] == rb
            assert row["signal"] == point.signal
        assert code == (1 if any(p.signal for p in points) else 0)
        assert (mon / "chart.svg").exists()

    def test_exit_codes_follow_signals(self, tmp_path):
        # big sustained change: must signal and exit 1
        cfg = small_sim_ini(
            tmp_path, extra="change = global\ntau = 30\ndelta = 4\n")
        sim = tmp_path / "sim"
        main(["simulate", "--config", str(cfg), "--out", str(sim)])
        monitor_ini = tmp_path / "m.ini"
        monitor_ini.write_text(
            "[model]\nf_diag = 0.7\nxi = -0.6, 0.03, 0\nq_diag = 0.01, 0.0001, 0.05\n"
            "[monitor]\npredictor = dynamic\nstart = 10\ns_min_points = 15\n"
            "[chart]\nlambda = 0.1\nl = 3.0\n"
        )
        code = main(["monitor", "--config", str(monitor_ini),
                     "--snapshots", str(sim / "snapshots.csv"),
                     "--attributes", str(sim / "attributes.csv"),
                     "--out", str(tmp_path / "mon")])
        assert code == 1
        rows = nio.read_chart_report(tmp_path / "mon" / "chart.csv")
        first_alarm = next(r["t"] for r in rows if r["signal"])
        assert first_alarm >= 30

    def test_svg_deterministic(self, tmp_path):
        cfg, sim = self._simulated(tmp_path)
        monitor_ini = tmp_path / "m.ini"
        monitor_ini.write_text(
            "[model]\nf_diag = 0.7\nxi = -0.6, 0.03, 0\nq_diag = 0.01, 0.0001, 0.05\n"
            "[chart]\nlambda = 0.1\nl = 3.0\ns = 0.11\n"
            "[monitor]\npredictor = dynamic\nstart = 10\n"
        )
        for name in ("m1", "m2"):
            main(["monitor", "--config", str(monitor_ini),
                  "--snapshots", str(sim / "snapshots.csv"),
                  "--attributes", str(sim / "attributes.csv"),
                  "--out", str(tmp_path / name)])
        assert ((tmp_path / "m1" / "chart.svg").read_bytes()
                == (tmp_path / "m2" / "chart.svg").read_bytes())


class TestCmdCalibrate:
    def test_writes_table(self, tmp_path):
        cfg = small_sim_ini(
            tmp_path,
            extra="[calibrate]\npredictor = dynamic\ntarget_arl0 = 100\n"
                  "lambdas = 0.2\nstart = 10\n",
        )
        out = tmp_path / "cal"
        code = main(["calibrate", "--config", str(cfg), "--out", str(out),
                     "--reps", "60", "--horizon", "300"])
        assert code == 0
        rows = nio.read_calibration_table(out / "calibration.csv")
        assert len(rows) == 1
        assert 0.5 <= rows[0]["l"] <= 6.0
        assert abs(rows[0]["arl0"] - 100.0) <= 10.0

    def test_infinite_target_rejected(self, tmp_path):
        cfg = small_sim_ini(
            tmp_path, extra="[calibrate]\ntarget_arl0 = inf\n")
        assert main(["calibrate", "--config", str(cfg),
                     "--out", str(tmp_path / "cal"), "--reps", "10",
                     "--horizon", "50"]) == 2


class TestCmdBenchmark:
    def test_tiny_grid(self, tmp_path):
        cfg = small_sim_ini(
            tmp_path,
            extra="[benchmark]\nmethods = dynamic\nscenarios = global\n"
                  "deltas = 2.0\ntarget_arl0 = 100\ntau = 25\nstart = 10\n",
        )
        out = tmp_path / "bench"
        code = main(["benchmark", "--config", str(cfg), "--out", str(out),
                     "--reps", "40", "--horizon", "250"])
        assert code == 0
        assert (out / "calibration.csv").exists()
        assert (out / "benchmark_global.svg").exists()
        with open(out / "benchmark_global.csv") as fh:
            header = fh.readline().strip()
            row = fh.readline().strip().split(",")
        assert header == "method,scenario,delta,arl,serl,reps,censored_count"
        assert row[0] == "dynamic" and row[1] == "global"
        assert float(row[3]) < 25.0  # delta=2 detected quickly
