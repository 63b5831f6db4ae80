import numpy as np
import pytest

import seedcomm as sc
from oracles import lp_enumerate

SQ2 = 1 / np.sqrt(2)


def random_basis(rng, n, d):
    q, _ = np.linalg.qr(rng.normal(size=(n, d)))
    return sc.SpectralBasis(q)


class TestSolveMinOneNorm:
    def test_single_column_forced(self):
        basis = sc.SpectralBasis(np.array([[SQ2], [SQ2], [0.0]]))
        sol = sc.solve_min_one_norm(basis, [0])
        assert sol.status == "optimal"
        assert sol.y == pytest.approx([1.0, 1.0, 0.0], abs=1e-9)
        assert sol.objective == pytest.approx(2.0, abs=1e-9)

    def test_two_column_vertex(self):
        basis = sc.SpectralBasis(np.array([[0.5, 0.5], [0.5, 0.5],
                                           [0.5, -0.5], [0.5, -0.5]]))
        sol = sc.solve_min_one_norm(basis, [0])
        assert sol.status == "optimal"
        assert sol.y == pytest.approx([1.0, 1.0, 0.0, 0.0], abs=1e-9)
        assert sol.x == pytest.approx([1.0, 1.0], abs=1e-9)
        assert sol.objective == pytest.approx(2.0, abs=1e-9)

    def test_zero_seed_row_infeasible(self):
        basis = sc.SpectralBasis(np.array([[1.0], [0.0]]))
        sol = sc.solve_min_one_norm(basis, [1])
        assert sol.status == "infeasible"
        assert np.isnan(sol.objective)

    def test_reconstruction_identity(self):
        rng = np.random.default_rng(30)
        basis = random_basis(rng, 12, 3)
        sol = sc.solve_min_one_norm(basis, [0, 4])
        if sol.status == "optimal":
            assert np.abs(basis.matrix @ sol.x - sol.y).max() < 1e-8

    def test_matches_enumeration_oracle(self):
        rng = np.random.default_rng(31)
        agreements = 0
        for _ in range(60):
            n = int(rng.integers(3, 9))
            d = int(rng.integers(1, min(4, n + 1)))
            basis = random_basis(rng, n, d)
            seeds = rng.choice(n, size=int(rng.integers(1, 3)), replace=False)
            sol = sc.solve_min_one_norm(basis, seeds)
            oracle = lp_enumerate(basis.matrix, seeds)
            if sol.status == "infeasible":
                assert oracle is None
            else:
                assert oracle is not None
                assert abs(sol.objective - oracle[0]) <= 1e-7 * max(1.0, abs(oracle[0]))
                agreements += 1
        assert agreements > 10  # mostly feasible draws

    def test_scaling_invariance_of_ranking(self):
        # a walk span with no advancement contains p0, so the program is
        # feasible by construction
        g, _ = sc.generate_planted(sc.PlantedSpec(2, 10, 0.6, 0.05, rng_seed=1))
        op = sc.WalkOperator.symmetric(g)
        seeds = [1, 6]
        basis = sc.local_basis(op, seeds, walk_steps=1, span_dim=3)
        a = sc.solve_min_one_norm(basis, seeds, rhs=1.0)
        b = sc.solve_min_one_norm(basis, seeds, rhs=2.5)
        assert a.status == b.status == "optimal"
        assert np.abs(b.y - 2.5 * a.y).max() < 1e-7
        assert np.array_equal(sc.rank_vertices(a), sc.rank_vertices(b))

    def test_feasibility_certificate(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            basis = random_basis(rng, 15, 3)
            seeds = rng.choice(15, size=2, replace=False)
            sol = sc.solve_min_one_norm(basis, seeds)
            if sol.status == "optimal":
                assert sol.y.min() >= -1e-9
                assert sol.y[seeds].min() >= 1 - 1e-9

    def test_seed_support_containment(self):
        rng = np.random.default_rng(34)
        for _ in range(20):
            basis = random_basis(rng, 10, 2)
            seeds = rng.choice(10, size=2, replace=False)
            sol = sc.solve_min_one_norm(basis, seeds)
            if sol.status == "optimal":
                nonzero_rows = np.abs(basis.matrix[seeds]).max(axis=1) > 0
                assert (sol.y[seeds][nonzero_rows] > 0).all()

    def test_empty_seeds_rejected(self):
        basis = sc.SpectralBasis(np.eye(3))
        with pytest.raises(ValueError):
            sc.solve_min_one_norm(basis, [])


class TestRankVertices:
    def test_tie_break_by_id(self):
        sol = sc.SparseIndicatorSolution(np.array([0.2, 0.9, 0.9]),
                                         np.zeros(1), 2.0, "optimal")
        assert sc.rank_vertices(sol).tolist() == [1, 2, 0]

    def test_all_equal_gives_id_order(self):
        sol = sc.SparseIndicatorSolution(np.ones(5), np.zeros(1), 5.0, "optimal")
        assert sc.rank_vertices(sol).tolist() == [0, 1, 2, 3, 4]

    def test_seed_side_ranks_first(self):
        basis = sc.SpectralBasis(np.array([[0.5, 0.5], [0.5, 0.5],
                                           [0.5, -0.5], [0.5, -0.5]]))
        sol = sc.solve_min_one_norm(basis, [0])
        ranked = sc.rank_vertices(sol)
        assert set(ranked[:2].tolist()) == {0, 1}

    def test_infeasible_rejected(self):
        sol = sc.SparseIndicatorSolution(np.zeros(3), np.zeros(1),
                                         float("nan"), "infeasible")
        with pytest.raises(ValueError):
            sc.rank_vertices(sol)
