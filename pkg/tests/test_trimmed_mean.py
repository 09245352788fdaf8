import numpy as np
import pytest

from itrim.core import SampleSet, TrimConfig, subset_size
from itrim.trimmed_mean import itm, itm_step, mean_losses

ALPHA_JUST_ABOVE_TWO_THIRDS = 2.0 / 3.0 + 1e-10


def random_samples(rng, n=None, d=None, with_truth=False):
    n = n or int(rng.integers(3, 50))
    d = d or int(rng.integers(1, 6))
    pts = rng.normal(size=(n, d)) * rng.uniform(0.5, 20.0, size=(n, 1))
    return SampleSet(points=pts, truth_mean=np.zeros(d) if with_truth else None)


class TestMeanLosses:
    def test_hand_arithmetic(self):
        s = SampleSet(points=[[0.0], [1.0], [10.0]])
        assert mean_losses(s, np.array([0.0])) == pytest.approx([0, 1, 100])

    def test_all_zero_at_common_point(self):
        s = SampleSet(points=[[2.0, 3.0]] * 4)
        assert mean_losses(s, np.array([2.0, 3.0])) == pytest.approx([0.0] * 4)

    def test_345_triangle(self):
        s = SampleSet(points=[[3.0, 4.0]])
        assert mean_losses(s, np.array([0.0, 0.0])) == pytest.approx([25.0])

    def test_dimension_mismatch(self):
        s = SampleSet(points=[[1.0, 2.0]])
        with pytest.raises(ValueError):
            mean_losses(s, np.array([1.0]))


class TestItmStep:
    def test_hand_enumeration(self):
        s = SampleSet(points=[[0.0], [1.0], [10.0]])
        mu_next, subset, loss = itm_step(s, np.array([0.0]), 2)
        assert subset.indices == (0, 1)
        assert mu_next == pytest.approx([0.5])
        assert loss == pytest.approx(1.0)

    def test_fixed_point_on_equal_points(self):
        s = SampleSet(points=[[4.0, -2.0]] * 5)
        mu_next, _, _ = itm_step(s, np.array([100.0, 100.0]), 3)
        assert mu_next == pytest.approx([4.0, -2.0])

    def test_symmetric_pair(self):
        s = SampleSet(points=[[-1.0], [1.0], [100.0]])
        mu_next, subset, _ = itm_step(s, np.array([0.0]), 2)
        assert subset.indices == (0, 1)
        assert mu_next == pytest.approx([0.0])


class TestItm:
    def test_alpha_one_is_grand_mean(self):
        rng = np.random.default_rng(0)
        s = random_samples(rng)
        est = itm(s, TrimConfig(alpha=1.0, iterations=7))
        assert est.value == pytest.approx(s.points.mean(axis=0))

    def test_two_hand_iterations(self):
        s = SampleSet(points=[[0.0], [1.0], [10.0]])
        est = itm(s, TrimConfig(alpha=ALPHA_JUST_ABOVE_TWO_THIRDS, iterations=2))
        assert est.value == pytest.approx([0.5])

    def test_single_point_returns_it(self):
        s = SampleSet(points=[[7.5, -1.0]])
        est = itm(s, TrimConfig(alpha=0.8, iterations=3))
        assert est.value == pytest.approx([7.5, -1.0])

    def test_trace_shape_and_final_value(self):
        rng = np.random.default_rng(1)
        s = random_samples(rng, with_truth=True)
        config = TrimConfig(alpha=0.8, iterations=6)
        est = itm(s, config)
        assert len(est.trace) == 6
        assert est.trace.records[-1].estimate == pytest.approx(est.value)
        k = subset_size(s.n, 0.8)
        assert all(len(r.subset) == k for r in est.trace.records)
        assert all(r.error_to_truth is not None for r in est.trace.records)

    def test_converged_at_recorded(self):
        s = SampleSet(points=[[0.0], [1.0], [10.0]])
        est = itm(s, TrimConfig(alpha=ALPHA_JUST_ABOVE_TWO_THIRDS, iterations=6))
        assert est.trace.converged_at is not None
        # After convergence all later iterates are identical.
        tail = est.trace.records[est.trace.converged_at :]
        for rec in tail:
            assert rec.estimate == pytest.approx(tail[0].estimate)

    def test_monotone_objective_chain(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            s = random_samples(rng)
            est = itm(s, TrimConfig(alpha=0.8, iterations=6))
            recs = est.trace.records
            for rec in recs:
                assert rec.loss_after_update <= rec.loss_at_selection + 1e-9
            for prev, nxt in zip(recs, recs[1:]):
                assert nxt.loss_at_selection <= prev.loss_after_update + 1e-9

    def test_translation_equivariance(self):
        rng = np.random.default_rng(3)
        s = random_samples(rng, n=20, d=3)
        shift = np.array([5.0, -2.0, 0.5])
        config = TrimConfig(alpha=0.8, iterations=5)
        base = itm(s, config).value
        shifted = itm(SampleSet(points=s.points + shift), config).value
        assert shifted == pytest.approx(base + shift, abs=1e-8)

    def test_scale_equivariance(self):
        rng = np.random.default_rng(4)
        s = random_samples(rng, n=20, d=2)
        config = TrimConfig(alpha=0.8, iterations=5)
        base = itm(s, config).value
        scaled = itm(SampleSet(points=3.0 * s.points), config).value
        assert scaled == pytest.approx(3.0 * base, abs=1e-8)
