import numpy as np
import pytest

from netspc import (
    ChangeScenario,
    ChangeSpec,
    EdgeFamily,
    NonStationaryError,
    SimulationConfig,
    StateSpaceModel,
    default_transition_model,
    evolve_state,
    generate_attributes,
    sample_snapshot,
    simulate_stream,
    state_sigma,
    stream_arrays,
)


class TestStateSigma:
    def test_age_effect_coordinate(self):
        assert state_sigma(0.0001, 0.7) == pytest.approx(0.01 / 0.3)

    def test_membership_coordinate(self):
        assert state_sigma(0.05, 0.7) == pytest.approx(np.sqrt(0.05) / 0.3)

    def test_zero_noise(self):
        assert state_sigma(0.0, 0.7) == 0.0

    def test_stationary_flag(self):
        assert state_sigma(0.05, 0.7, stationary=True) == pytest.approx(
            np.sqrt(0.05 / (1 - 0.49)))

    def test_nonstationary_rejected(self):
        with pytest.raises(NonStationaryError):
            state_sigma(0.1, 1.0)


class TestGenerateAttributes:
    def test_equal_ages_give_zero_gap(self):
        cfg = SimulationConfig(n=2, member_count=0, age_range=(25, 25), seed=0)
        X = generate_attributes(cfg)
        assert np.all(X.values[:, 1] == 0.0)

    def test_non_member_edges_have_zero_flag(self):
        cfg = SimulationConfig(n=6, member_count=0, seed=1)
        X = generate_attributes(cfg)
        assert np.all(X.values[:, 2] == 0.0)

    def test_member_adjacency_fraction(self):
        # edges not touching the 5 members: 45*44 ordered pairs of 50*49
        cfg = SimulationConfig(seed=2)
        X = generate_attributes(cfg)
        assert X.values.shape == (2450, 3)
        assert int(X.values[:, 2].sum()) == 2450 - 45 * 44

    def test_ages_within_range(self):
        cfg = SimulationConfig(seed=3)
        X = generate_attributes(cfg)
        assert X.values[:, 1].max() <= 20.0
        assert X.values[:, 1].min() >= 0.0


class TestEvolveState:
    def test_deterministic_fixed_point(self):
        model = StateSpaceModel(0.7 * np.eye(3), np.array([-0.6, 0.03, 0.0]),
                                np.zeros((3, 3)), EdgeFamily.BERNOULLI)
        rng = np.random.default_rng(0)
        beta = evolve_state(np.array([-2.0, 0.1, 0.0]), model, rng)
        assert np.allclose(beta, [-2.0, 0.1, 0.0], atol=1e-12)

    def test_offset_applied(self):
        model = StateSpaceModel(0.7 * np.eye(3), np.zeros(3), np.zeros((3, 3)),
                                EdgeFamily.BERNOULLI)
        rng = np.random.default_rng(0)
        offset = np.array([0.0, 0.0, 1.5])
        beta = evolve_state(np.zeros(3), model, rng, offset=offset)
        assert np.allclose(beta, offset)

    def test_scenario2_offset_magnitude(self):
        change = ChangeSpec(ChangeScenario.LOCAL, tau=50, delta=2.0)
        off = change.offset(default_transition_model(EdgeFamily.BERNOULLI))
        assert off[2] == pytest.approx(2 * np.sqrt(0.05) / 0.3)
        assert off[0] == off[1] == 0.0

    def test_scenario1_default_sign_is_negative(self):
        change = ChangeSpec(ChangeScenario.GLOBAL, tau=50, delta=1.0)
        off = change.offset(default_transition_model(EdgeFamily.BERNOULLI))
        assert off[1] == pytest.approx(-0.01 / 0.3)

    def test_offset_linear_in_delta(self):
        model = default_transition_model(EdgeFamily.BERNOULLI)
        one = ChangeSpec(ChangeScenario.LOCAL, tau=5, delta=1.0).offset(model)
        two = ChangeSpec(ChangeScenario.LOCAL, tau=5, delta=2.0).offset(model)
        assert np.allclose(two, 2.0 * one)

    def test_stationary_mode_offset(self):
        change = ChangeSpec(ChangeScenario.GLOBAL, tau=50, delta=1.0,
                            sigma_mode="stationary")
        off = change.offset(default_transition_model(EdgeFamily.BERNOULLI))
        assert off[1] == pytest.approx(-np.sqrt(0.0001 / (1 - 0.49)))


class TestSampleSnapshot:
    def test_zero_rate_gives_empty_network(self):
        rng = np.random.default_rng(0)
        X = np.ones((100, 1))
        w = sample_snapshot(np.array([-80.0]), X, EdgeFamily.BERNOULLI, rng)
        assert w.sum() == 0.0

    def test_bernoulli_concentration(self):
        rng = np.random.default_rng(1)
        X = np.ones((10_000, 1))
        w = sample_snapshot(np.array([0.0]), X, EdgeFamily.BERNOULLI, rng)
        assert abs(w.sum() - 5000) < 200

    def test_poisson_concentration(self):
        rng = np.random.default_rng(2)
        X = np.ones((10_000, 1))
        w = sample_snapshot(np.array([np.log(2.0)]), X, EdgeFamily.POISSON, rng)
        assert abs(w.mean() - 2.0) < 0.06


class TestSimulateStream:
    def test_shapes_and_defaults(self):
        cfg = SimulationConfig(length=20, seed=0)
        stream, betas = simulate_stream(cfg)
        assert len(stream) == 20
        assert stream.snapshots[0].m == 2450
        assert betas.shape == (20, 3)
        assert [s.t for s in stream.snapshots] == list(range(1, 21))

    def test_seed_determinism(self):
        cfg = SimulationConfig(length=15, seed=42)
        s1, b1 = simulate_stream(cfg)
        s2, b2 = simulate_stream(cfg)
        assert np.array_equal(b1, b2)
        for a, b in zip(s1.snapshots, s2.snapshots):
            assert np.array_equal(a.weights, b.weights)

    def test_change_free_prefix_identical(self):
        cfg = SimulationConfig(length=30, seed=5)
        change = ChangeSpec(ChangeScenario.GLOBAL, tau=20, delta=2.0)
        s0, b0 = simulate_stream(cfg)
        s1, b1 = simulate_stream(cfg, change)
        assert np.array_equal(b0[:19], b1[:19])
        for a, b in zip(s0.snapshots[:19], s1.snapshots[:19]):
            assert np.array_equal(a.weights, b.weights)
        assert not np.array_equal(b0[19], b1[19])

    def test_delta_zero_is_change_free(self):
        cfg = SimulationConfig(length=30, seed=6)
        change = ChangeSpec(ChangeScenario.LOCAL, tau=10, delta=0.0)
        _, b0 = simulate_stream(cfg)
        _, b1 = simulate_stream(cfg, change)
        assert np.array_equal(b0, b1)

    @pytest.mark.parametrize("family", [EdgeFamily.BERNOULLI, EdgeFamily.POISSON])
    def test_family_contract(self, family):
        cfg = SimulationConfig(length=10, seed=7, family=family)
        stream, _ = simulate_stream(cfg)
        for snap in stream.snapshots:
            w = snap.weights
            if family is EdgeFamily.BERNOULLI:
                assert set(np.unique(w)) <= {0.0, 1.0}
            else:
                assert np.all(w >= 0) and np.all(w == np.floor(w))

    def test_sustained_offset_accumulates_to_fixed_point_shift(self):
        # with Q=0 the post-change trajectory converges to the shifted mean
        model = StateSpaceModel(0.7 * np.eye(3), np.array([-0.6, 0.03, 0.0]),
                                np.zeros((3, 3)), EdgeFamily.BERNOULLI)
        cfg = SimulationConfig(length=200, seed=8, model=model,
                               beta0=np.array([-2.0, 0.1, 0.0]))
        change = ChangeSpec(ChangeScenario.GLOBAL, tau=5, delta=1.5)
        _, betas = simulate_stream(cfg, change)
        per_step = change.offset(model)[1]
        assert betas[-1, 1] == pytest.approx(0.1 + per_step / 0.3, abs=1e-9)

    def test_mean_edge_probability_near_plugin(self):
        # long-run mean edge frequency approximates the response at the
        # state fixed point, averaged over edges
        from netspc import mean_response

        cfg = SimulationConfig(length=400, seed=9)
        stream, _ = simulate_stream(cfg)
        Xv = stream.attributes[0].values
        plugin = mean_response(Xv @ np.array([-2.0, 0.1, 0.0]),
                               EdgeFamily.BERNOULLI).mean()
        empirical = np.mean([s.weights.mean() for s in stream.snapshots[50:]])
        assert abs(empirical - plugin) < 0.05

    def test_state_stationarity(self):
        cfg = SimulationConfig(length=5000, seed=10)
        model = cfg.model
        rng = np.random.default_rng(0)
        beta = np.array(cfg.beta0)
        path = np.empty(5000)
        for t in range(5000):
            beta = evolve_state(beta, model, rng)
            path[t] = beta[0]
        window = path[49:]
        se = window.std(ddof=1) / np.sqrt(window.size / 10)  # crude ESS guard
        assert abs(window.mean() - (-2.0)) < 3 * se + 0.02

    def test_lazy_stream_matches_materialized(self):
        cfg = SimulationConfig(length=12, seed=11)
        X, steps = stream_arrays(cfg)
        stream, betas = simulate_stream(cfg)
        for (t, beta, w), snap in zip(steps, stream.snapshots):
            assert t == snap.t
            assert np.array_equal(w, snap.weights)
            assert np.array_equal(beta, betas[t - 1])

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            SimulationConfig(length=0)
        with pytest.raises(ValueError):
            SimulationConfig(member_count=99, n=10)
        with pytest.raises(ValueError):
            ChangeSpec(ChangeScenario.GLOBAL, tau=0, delta=1.0)
        with pytest.raises(ValueError):
            ChangeSpec(ChangeScenario.GLOBAL, tau=5, delta=-1.0)
