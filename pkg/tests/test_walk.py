import numpy as np
import pytest

import seedcomm as sc
from conftest import random_graph


class TestInitialVector:
    def test_uniform(self, two_triangles):
        p = sc.initial_vector([0, 1, 4], two_triangles, "uniform")
        assert p.indices.tolist() == [0, 1, 4]
        assert np.allclose(p.values, 1 / 3)
        assert p.total() == pytest.approx(1.0, abs=1e-12)

    def test_degree_weighted(self):
        # a has degree 2, b degree 4
        g = sc.Graph.from_edges([(0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (1, 7)])
        p = sc.initial_vector([0, 1], g, "degree")
        assert p.values.tolist() == pytest.approx([1 / 3, 2 / 3])

    def test_single_seed(self, k3):
        for mode in ("uniform", "degree"):
            p = sc.initial_vector([2], k3, mode)
            assert p.indices.tolist() == [2]
            assert p.values.tolist() == [1.0]

    def test_empty_seeds_rejected(self, k3):
        with pytest.raises(ValueError):
            sc.initial_vector([], k3)


class TestPropagate:
    def test_k3_symmetric(self, k3):
        op = sc.WalkOperator.symmetric(k3)
        p = sc.ProbabilityVector(3, np.array([0]), np.array([1.0]))
        out = sc.propagate(op, p)
        assert np.allclose(out.to_dense(), 1 / 3, atol=1e-15)

    def test_path2_stochastic_by_hand(self):
        g = sc.Graph.from_edges([(0, 1)])
        op = sc.WalkOperator.stochastic(g)
        p = sc.ProbabilityVector(2, np.array([0]), np.array([1.0]))
        out = sc.propagate(op, p)
        assert out.to_dense().tolist() == pytest.approx([0.5, 0.5])

    def test_stochastic_conserves_mass(self):
        rng = np.random.default_rng(10)
        for _ in range(5):
            g = random_graph(rng, int(rng.integers(5, 60)), 0.15)
            op = sc.WalkOperator.stochastic(g)
            seeds = rng.choice(g.n, size=3, replace=False)
            p = sc.initial_vector(seeds, g)
            for _ in range(50):
                p = sc.propagate(op, p)
            assert abs(p.total() - 1.0) < 1e-12

    def test_never_negative(self):
        rng = np.random.default_rng(11)
        g = random_graph(rng, 40, 0.1)
        for mode in ("symmetric", "stochastic"):
            op = getattr(sc.WalkOperator, mode)(g)
            p = sc.initial_vector(rng.choice(g.n, 4, replace=False), g)
            for _ in range(10):
                p = sc.propagate(op, p)
                assert p.values.min() >= 0.0

    def test_symmetric_fixed_vector(self):
        # sqrt(deg + 1) componentwise is an exact eigenvector of the
        # symmetric operator with eigenvalue 1
        rng = np.random.default_rng(12)
        for _ in range(5):
            g = random_graph(rng, int(rng.integers(4, 30)), 0.3)
            op = sc.WalkOperator.symmetric(g)
            x = np.sqrt(g.degrees + 1.0)
            assert np.abs(op.apply_dense(x) - x).max() < 1e-10

    def test_support_monotone(self):
        rng = np.random.default_rng(13)
        g = random_graph(rng, 50, 0.08)
        op = sc.WalkOperator.stochastic(g)
        p = sc.initial_vector([0], g)
        prev = p.support_size()
        for _ in range(10):
            p = sc.propagate(op, p)
            assert p.support_size() >= prev
            prev = p.support_size()


class TestSampleSubgraph:
    def test_triangle_contained(self, two_triangles):
        res = sc.sample_subgraph(two_triangles, [0], 3)
        assert set(res.vertices.tolist()) == {0, 1, 2}
        assert res.subgraph.m == 3

    def test_saturation_returns_component(self, two_triangles):
        res = sc.sample_subgraph(two_triangles, [0], 100)
        assert res.vertices.tolist() == [0, 1, 2, 3, 4, 5]
        assert res.warning  # never reached the requested size

    def test_seeds_always_included(self):
        rng = np.random.default_rng(14)
        g = random_graph(rng, 60, 0.05)
        for _ in range(10):
            seeds = rng.choice(g.n, size=2, replace=False)
            res = sc.sample_subgraph(g, seeds, 10)
            assert np.isin(seeds, res.vertices).all()

    def test_isolated_seed(self):
        g = sc.Graph.from_edges([(1, 2)], n=3)  # vertex 0 isolated
        res = sc.sample_subgraph(g, [0], 2)
        assert res.vertices.tolist() == [0]
        assert res.warning

    def test_target_below_seed_count_rejected(self, k3):
        with pytest.raises(ValueError):
            sc.sample_subgraph(k3, [0, 1], 1)
