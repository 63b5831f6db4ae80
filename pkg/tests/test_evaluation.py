import json

import numpy as np
import pytest

import seedcomm as sc
from seedcomm.evaluation import TrialRecord


class TestF1Score:
    def test_identity(self):
        r = sc.f1_score([1, 2, 3], [1, 2, 3])
        assert (r.f1, r.precision, r.recall) == (1.0, 1.0, 1.0)

    def test_half_overlap(self):
        r = sc.f1_score([1, 2, 3, 4], [3, 4, 5, 6])
        assert (r.f1, r.precision, r.recall) == (0.5, 0.5, 0.5)

    def test_disjoint_is_zero(self):
        r = sc.f1_score([1, 2], [3, 4])
        assert r.f1 == 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sc.f1_score([], [1])
        with pytest.raises(ValueError):
            sc.f1_score([1], [])

    def test_precision_recall_duality(self):
        rng = np.random.default_rng(50)
        for _ in range(1000):
            a = rng.choice(30, size=int(rng.integers(1, 12)), replace=False)
            b = rng.choice(30, size=int(rng.integers(1, 12)), replace=False)
            ab = sc.f1_score(a, b)
            ba = sc.f1_score(b, a)
            assert ab.precision == ba.recall
            assert ab.recall == ba.precision
            assert ab.f1 == ba.f1

    def test_harmonic_bound(self):
        rng = np.random.default_rng(51)
        for _ in range(300):
            a = rng.choice(20, size=int(rng.integers(1, 10)), replace=False)
            b = rng.choice(20, size=int(rng.integers(1, 10)), replace=False)
            r = sc.f1_score(a, b)
            assert r.f1 <= min(1.0, 2 * min(r.precision, r.recall)) + 1e-15


@pytest.fixture(scope="module")
def batch():
    g, cat = sc.generate_planted(sc.PlantedSpec(4, 15, 0.6, 0.02, rng_seed=2))
    spec = sc.SeedSpec(strategy="random", count=3, rng_seed=0)
    params = sc.DetectParams(size_min=5, size_max=40)
    stats = sc.run_batch(g, cat, spec, params, trials=8, rng_seed=123)
    return stats


class TestRunBatch:
    def test_shape_and_aggregates(self, batch):
        assert batch.trials == 8
        assert len(batch.records) == 8
        f1s = np.array([r.f1 for r in batch.records])
        assert batch.mean_f1 == pytest.approx(float(f1s.mean()), abs=1e-12)
        assert batch.std_f1 == pytest.approx(float(f1s.std(ddof=1)), abs=1e-12)

    def test_single_trial_degenerate(self):
        g, cat = sc.generate_planted(sc.PlantedSpec(3, 12, 0.7, 0.0, rng_seed=5))
        spec = sc.SeedSpec(strategy="random", count=2, rng_seed=0)
        stats = sc.run_batch(g, cat, spec, sc.DetectParams(size_min=4, size_max=30),
                             trials=1, rng_seed=7)
        assert stats.degenerate
        assert stats.std_f1 == 0.0

    def test_strong_separation_high_f1(self, batch):
        assert batch.mean_f1 >= 0.95

    def test_deterministic_and_parallel_equal(self):
        g, cat = sc.generate_planted(sc.PlantedSpec(3, 12, 0.7, 0.0, rng_seed=5))
        spec = sc.SeedSpec(strategy="random", count=2, rng_seed=0)
        params = sc.DetectParams(size_min=4, size_max=30)
        a = sc.run_batch(g, cat, spec, params, trials=6, rng_seed=9, jobs=1)
        b = sc.run_batch(g, cat, spec, params, trials=6, rng_seed=9, jobs=4)
        assert [r.f1 for r in a.records] == [r.f1 for r in b.records]
        assert [r.community_index for r in a.records] == [r.community_index for r in b.records]

    def test_zero_trials_rejected(self, batch):
        g, cat = sc.generate_planted(sc.PlantedSpec(3, 12, 0.7, 0.0, rng_seed=5))
        with pytest.raises(ValueError):
            sc.run_batch(g, cat, sc.SeedSpec(), sc.DetectParams(), trials=0, rng_seed=0)


class TestExportReport:
    def test_json_roundtrip(self, batch):
        text = sc.export_report(batch, "json")
        parsed = json.loads(text)
        assert parsed == batch.to_dict()
        assert parsed["mean_f1"] == batch.mean_f1  # float exact through repr

    def test_csv_row_count(self, batch):
        text = sc.export_report(batch, "csv")
        lines = text.strip().split("\n")
        assert len(lines) == batch.trials + 2  # header + trials + summary

    def test_csv_f1_significant_digits(self):
        rec = TrialRecord(0, 0, 10, 10, 0.123456789012, 1.0, 1.0, 1, False, 2.0)
        stats = sc.BatchStats(1, 0.123456789012, 0.0, True, 2.0, 2.0, 2.0, [rec])
        text = sc.export_report(stats, "csv")
        assert "0.123456789" in text

    def test_unknown_format_rejected(self, batch):
        with pytest.raises(ValueError):
            sc.export_report(batch, "xml")
