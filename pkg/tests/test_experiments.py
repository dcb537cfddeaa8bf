import math

import numpy as np
import pytest

from normbounds import shannon_entropy, validate_distribution
from normbounds.exceptions import DomainError, EmptyInput
from normbounds.experiments import (
    BoundRecord,
    DiffRecord,
    ExperimentConfig,
    bound_record,
    difference_record,
    record_rng,
    run_bounds_experiment,
    run_difference_experiment,
    sample_simplex,
    sample_spread,
    summarize,
)


class TestConfig:
    def test_defaults(self):
        cfg = ExperimentConfig()
        assert cfg.num_distributions == 500
        assert cfg.support_size == 100
        assert cfg.sigma.sigma == 0.9

    @pytest.mark.parametrize("kw", [dict(num_distributions=0), dict(support_size=0),
                                    dict(seed=-1), dict(seed=2 ** 64), dict(mode="x"),
                                    dict(sampler="x"), dict(n_jobs=0)])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            ExperimentConfig(**kw)

    def test_sigma_validated(self):
        with pytest.raises(ValueError):
            ExperimentConfig(sigma=1.0)


class TestSampling:
    def test_point(self):
        assert list(sample_simplex(1, record_rng(0, 0))) == [1.0]

    def test_valid(self):
        for seed in range(20):
            p = sample_simplex(50, record_rng(seed, 3))
            validate_distribution(p.probs, tol=1e-12)

    def test_deterministic(self):
        a = sample_simplex(10, record_rng(7, 1))
        b = sample_simplex(10, record_rng(7, 1))
        c = sample_simplex(10, record_rng(7, 2))
        assert a == b and a != c

    def test_coordinate_means(self):
        rng = np.random.default_rng(1)
        xs = np.array([sample_simplex(100, rng).probs for _ in range(10_000)])
        assert np.all(np.abs(xs.mean(axis=0) - 0.01) <= 0.002)

    def test_flat_marginal(self):
        # Dirichlet(1,1,1) marginal is Beta(1, 2): P(x1 <= t) = 1 - (1 - t)^2
        rng = np.random.default_rng(2)
        x1 = np.array([sample_simplex(3, rng).probs[0] for _ in range(20_000)])
        for t in (0.1, 0.3, 0.6):
            assert np.mean(x1 <= t) == pytest.approx(1 - (1 - t) ** 2, abs=0.015)

    def test_spread_covers_entropy_range(self):
        hs = [shannon_entropy(sample_spread(100, record_rng(0, i))) for i in range(500)]
        assert min(hs) < 1.0 and max(hs) > 6.0


class TestRecords:
    def test_bound_record(self):
        p = validate_distribution([0.5, 0.5])
        r = bound_record(0, p, 0.5)
        assert r.entropy == 1.0
        assert r.abs_err_lower == pytest.approx(1 - r.lower)
        assert r.rel_err_upper == pytest.approx(r.abs_err_upper)
        assert not r.violates()

    def test_zero_entropy_relative_absent(self):
        r = bound_record(0, validate_distribution([1.0]), 0.9)
        assert r.entropy == 0.0 and r.lower == 0.0 and r.upper == 0.0
        assert r.rel_err_lower is None and r.rel_err_upper is None

    def test_identical_pair(self):
        p = sample_simplex(20, record_rng(0, 0))
        r = difference_record(0, p, p, 0.9)
        assert r.true_diff == 0.0
        assert r.rel_err is None
        assert r.upper_bound >= 0

    def test_pair_ordering(self):
        hi = validate_distribution(np.full(8, 1 / 8))
        lo = validate_distribution([0.9, 0.1, 0, 0, 0, 0, 0, 0])
        a = difference_record(0, lo, hi, 0.9)
        b = difference_record(0, hi, lo, 0.9)
        assert a == b
        assert a.true_diff == pytest.approx(3 - shannon_entropy(lo))

    def test_violation_detection(self):
        assert BoundRecord(0, 1.0, 1.1, 2.0, -0.1, 1.0, -0.1, 1.0).violates()
        assert DiffRecord(0, 1.0, 0.5, -0.5, -0.5).violates()


class TestRuns:
    def test_defaults_hold(self):
        recs = run_bounds_experiment(ExperimentConfig(seed=3))
        assert len(recs) == 500
        assert [r.index for r in recs] == list(range(500))
        assert all(r.lower <= r.entropy <= r.upper for r in recs)

    def test_single(self):
        (r,) = run_bounds_experiment(ExperimentConfig(num_distributions=1, support_size=1))
        assert (r.entropy, r.lower, r.upper) == (0.0, 0.0, 0.0)

    def test_difference_holds(self):
        recs = run_difference_experiment(ExperimentConfig(mode="difference", seed=5))
        assert all(r.upper_bound >= r.true_diff for r in recs)
        assert all(r.true_diff >= 0 for r in recs)

    def test_parallel_matches_serial(self):
        for mode in ("bounds", "difference"):
            serial = run_bounds_experiment if mode == "bounds" else run_difference_experiment
            a = serial(ExperimentConfig(mode=mode, num_distributions=60, seed=11))
            b = serial(ExperimentConfig(mode=mode, num_distributions=60, seed=11, n_jobs=4))
            assert a == b

    def test_prefix_stable(self):
        a = run_bounds_experiment(ExperimentConfig(num_distributions=10, seed=9))
        b = run_bounds_experiment(ExperimentConfig(num_distributions=20, seed=9))
        assert a == b[:10]

    def test_relative_error_peaks_near_zero_difference(self):
        recs = run_difference_experiment(ExperimentConfig(mode="difference", sampler="spread", seed=1))
        near = [r for r in recs if r.rel_err is not None and r.true_diff < 0.05]
        far = [r for r in recs if r.true_diff > 2]
        assert near and far
        assert max(r.rel_err for r in near) > max(r.rel_err for r in far)

    def test_abs_error_is_sum_of_endpoint_errors(self):
        # independent of the difference itself
        cfg = ExperimentConfig(num_distributions=50, mode="difference", sampler="spread", seed=2)
        for i, r in enumerate(run_difference_experiment(cfg)):
            rng = record_rng(cfg.seed, i)
            p = sample_spread(cfg.support_size, rng)
            q = sample_spread(cfg.support_size, rng)
            if shannon_entropy(p) < shannon_entropy(q):
                p, q = q, p
            up = bound_record(0, p, cfg.sigma).abs_err_upper
            lo = bound_record(0, q, cfg.sigma).abs_err_lower
            assert r.abs_err == pytest.approx(up + lo, rel=1e-12, abs=1e-12)


class TestSummarize:
    def test_empty(self):
        with pytest.raises(EmptyInput):
            summarize([])

    def test_zero_record(self):
        s = summarize([BoundRecord(0, 0.0, 0.0, 0.0, 0.0, 0.0, None, None)])
        assert s["violations"] == 0
        for col in ("abs_err_lower", "abs_err_upper"):
            assert s[col] == {"min": 0.0, "mean": 0.0, "max": 0.0}
        assert s["rel_err_lower"]["mean"] is None

    def test_mean(self):
        recs = [DiffRecord(0, 1.0, 1.5, 0.5, 0.5), DiffRecord(1, 2.0, 3.0, 1.0, 0.5)]
        s = summarize(recs)
        assert s["abs_err"] == {"min": 0.5, "mean": 0.75, "max": 1.0}
        assert s["rel_err"]["mean"] == 0.5

    def test_defaults_no_violations(self):
        assert summarize(run_bounds_experiment(ExperimentConfig()))["violations"] == 0
