"""Attractor rule tests: each rule against its definition on small
hand-built swarms, plus the centroid and noise-scale identities."""

from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pao.attractors import (
    AttractorSet,
    AttractorSpec,
    DE_WEIGHT,
    VALID_KINDS,
    compute_attractors,
    noise_scale,
    weighted_centroid,
)


def make_swarm(positions, fitness=None, local_best_pos=None, global_best_pos=None):
    positions = np.asarray(positions, dtype=float)
    n, d = positions.shape
    x = np.zeros((n, d, 2))
    x[:, :, 0] = positions
    if fitness is None:
        fitness = (positions**2).sum(axis=1)
    fitness = np.asarray(fitness, dtype=float)
    if local_best_pos is None:
        local_best_pos = positions.copy()
    if global_best_pos is None:
        global_best_pos = local_best_pos[np.argmin(fitness)].copy()
    return SimpleNamespace(
        x=x,
        fitness=fitness,
        local_best_pos=np.asarray(local_best_pos, dtype=float),
        global_best_pos=np.asarray(global_best_pos, dtype=float),
    )


class TestSpec:
    @pytest.mark.parametrize("kind", VALID_KINDS)
    def test_parse_label_round_trip(self, kind):
        spec = AttractorSpec.parse(kind)
        assert spec.kind == kind
        assert AttractorSpec.parse(spec.label()) == spec

    def test_parse_with_stddev(self):
        spec = AttractorSpec.parse("stochasticgaussian:0.25")
        assert spec == AttractorSpec("stochasticgaussian", stddev=0.25)
        assert spec.label() == "stochasticgaussian:0.25"

    def test_kind_normalised(self):
        assert AttractorSpec(" GlobalBest ").kind == "globalbest"

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown attractor"):
            AttractorSpec("bestglobal")

    def test_negative_stddev(self):
        with pytest.raises(ValueError, match="stddev"):
            AttractorSpec("stochasticgaussian", stddev=-1.0)

    @given(st.floats(0.0, 10.0))
    def test_label_round_trips_stddev(self, sd):
        spec = AttractorSpec("stochasticgaussian", stddev=sd)
        assert AttractorSpec.parse(spec.label()) == spec


class TestRules:
    def setup_method(self):
        self.swarm = make_swarm(
            positions=[[0.0, 0.0], [1.0, 2.0], [4.0, -2.0], [-1.0, 1.0], [2.0, 2.0]],
            fitness=[5.0, 1.0, 9.0, 3.0, 7.0],
            local_best_pos=[[0.0, 0.1], [1.0, 2.0], [3.0, -2.0], [-1.0, 0.5], [2.0, 1.0]],
            global_best_pos=[1.0, 2.0],
        )
        self.rng = np.random.default_rng(0)

    def one(self, kind, **kwargs):
        aset = compute_attractors(self.swarm, [AttractorSpec(kind, **kwargs)], self.rng)
        assert aset.alpha.shape == (1, 5, 2)
        return aset.alpha[0]

    def test_globalbest(self):
        np.testing.assert_array_equal(self.one("globalbest"), np.tile([1.0, 2.0], (5, 1)))

    def test_localbest(self):
        np.testing.assert_array_equal(self.one("localbest"), self.swarm.local_best_pos)

    def test_averagelocalbest(self):
        expected = self.swarm.local_best_pos.mean(axis=0)
        np.testing.assert_allclose(self.one("averagelocalbest"), np.tile(expected, (5, 1)))

    def test_averageparticle(self):
        expected = self.swarm.x[:, :, 0].mean(axis=0)
        np.testing.assert_allclose(self.one("averageparticle"), np.tile(expected, (5, 1)))

    def test_weightedaverage_uniform_when_fitness_flat(self):
        self.swarm.fitness = np.full(5, 3.3)
        got = self.one("weightedaverageparticle")
        np.testing.assert_allclose(got, np.tile(self.swarm.x[:, :, 0].mean(axis=0), (5, 1)))

    def test_weightedaverage_prefers_fitter(self):
        got = self.one("weightedaverageparticle")[0]
        plain_mean = self.swarm.x[:, :, 0].mean(axis=0)
        best = self.swarm.x[np.argmin(self.swarm.fitness), :, 0]
        # the weighted mean sits strictly closer to the best particle
        assert np.linalg.norm(got - best) < np.linalg.norm(plain_mean - best)

    def test_weightedaverage_in_convex_hull(self):
        got = self.one("weightedaverageparticle")[0]
        pos = self.swarm.x[:, :, 0]
        assert np.all(got >= pos.min(axis=0) - 1e-12)
        assert np.all(got <= pos.max(axis=0) + 1e-12)

    def test_derand1bin_membership(self):
        # every donor must be p_a + W (p_b - p_c) for distinct a,b,c != i
        pos = self.swarm.x[:, :, 0]
        donors = self.one("derand1bin")
        for i in range(5):
            others = [j for j in range(5) if j != i]
            candidates = [
                pos[a] + DE_WEIGHT * (pos[b] - pos[c])
                for a in others
                for b in others
                for c in others
                if len({a, b, c}) == 3
            ]
            assert any(np.allclose(donors[i], c, atol=1e-12) for c in candidates)

    def test_derand1bin_degenerate_swarm(self):
        swarm = make_swarm(np.tile([2.0, -1.0], (6, 1)))
        aset = compute_attractors(swarm, [AttractorSpec("derand1bin")], self.rng)
        np.testing.assert_allclose(aset.alpha[0], np.tile([2.0, -1.0], (6, 1)))

    def test_derand1bin_needs_four(self):
        swarm = make_swarm([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
        with pytest.raises(ValueError, match="at least 4"):
            compute_attractors(swarm, [AttractorSpec("derand1bin")], self.rng)

    def test_stochasticgaussian_zero_std_is_globalbest(self):
        got = self.one("stochasticgaussian", stddev=0.0)
        np.testing.assert_array_equal(got, np.tile([1.0, 2.0], (5, 1)))

    def test_stochasticgaussian_spread(self):
        swarm = make_swarm(np.zeros((4000, 2)), global_best_pos=[3.0, -1.0])
        aset = compute_attractors(
            swarm, [AttractorSpec("stochasticgaussian", stddev=0.5)], self.rng
        )
        dev = aset.alpha[0] - [3.0, -1.0]
        assert abs(dev.mean()) < 0.02
        assert dev.std() == pytest.approx(0.5, rel=0.05)

    def test_multiple_specs_stack(self):
        aset = compute_attractors(
            self.swarm,
            [AttractorSpec("localbest"), AttractorSpec("globalbest")],
            self.rng,
            k=(1.0, 3.0),
        )
        assert aset.alpha.shape == (2, 5, 2)
        assert aset.k == (1.0, 3.0)

    def test_k_length_mismatch(self):
        with pytest.raises(ValueError, match="stiffnesses"):
            compute_attractors(self.swarm, [AttractorSpec("globalbest")], self.rng, k=(1.0, 2.0))


class TestCentroidAndNoise:
    def test_centroid_equal_weights_is_mean(self):
        alpha = np.array([np.zeros((3, 2)), np.full((3, 2), 4.0)])
        aset = AttractorSet(alpha=alpha, k=(1.0, 1.0))
        np.testing.assert_allclose(weighted_centroid(aset), np.full((3, 2), 2.0))

    def test_centroid_weighting(self):
        alpha = np.array([np.zeros((2, 2)), np.full((2, 2), 4.0)])
        aset = AttractorSet(alpha=alpha, k=(3.0, 1.0))
        np.testing.assert_allclose(weighted_centroid(aset), np.full((2, 2), 1.0))

    def test_centroid_zero_weight_drops_slice(self):
        alpha = np.array([np.full((2, 2), 7.0), np.full((2, 2), 100.0)])
        aset = AttractorSet(alpha=alpha, k=(2.0, 0.0))
        np.testing.assert_allclose(weighted_centroid(aset), np.full((2, 2), 7.0))

    def test_centroid_rejects_zero_total(self):
        aset = AttractorSet(alpha=np.zeros((1, 2, 2)), k=(0.0,))
        with pytest.raises(ValueError, match="stiffness"):
            weighted_centroid(aset)

    @given(st.integers(0, 2**32 - 1))
    def test_centroid_matches_loop(self, seed):
        rng = np.random.default_rng(seed)
        alpha = rng.normal(size=(3, 4, 2))
        k = tuple(rng.uniform(0.1, 2.0, size=3))
        aset = AttractorSet(alpha=alpha, k=k)
        ref = sum(k[r] * alpha[r] for r in range(3)) / sum(k)
        np.testing.assert_allclose(weighted_centroid(aset), ref, atol=1e-12)

    def test_set_shape_validation(self):
        with pytest.raises(ValueError, match="alpha"):
            AttractorSet(alpha=np.zeros((2, 2)), k=(1.0, 1.0))
        with pytest.raises(ValueError, match="slices"):
            AttractorSet(alpha=np.zeros((2, 3, 2)), k=(1.0,))

    def test_noise_scale_hand_value(self):
        swarm = make_swarm([[0.0, 0.0], [2.0, 4.0]], global_best_pos=[0.0, 0.0])
        # mean position (1, 2) minus gbest (0, 0): 1 + 4 = 5
        assert noise_scale(swarm) == pytest.approx(5.0)

    def test_noise_scale_zero_at_collapse(self):
        swarm = make_swarm(np.tile([1.5, -0.5], (4, 1)), global_best_pos=[1.5, -0.5])
        assert noise_scale(swarm) == 0.0

    def test_noise_scale_nonnegative(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            swarm = make_swarm(rng.normal(size=(6, 3)))
            assert noise_scale(swarm) >= 0.0
