import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itrim.core import (
    SampleSet,
    Subset,
    TrimConfig,
    select_lowest_loss,
    subset_size,
)


class TestSubsetSize:
    def test_exact_product(self):
        assert subset_size(10, 0.8) == 8

    def test_ceiling(self):
        assert subset_size(7, 0.8) == 6  # ceil(5.6)

    def test_alpha_one_keeps_all(self):
        assert subset_size(5, 1.0) == 5

    def test_float_noise_snaps_to_integer(self):
        # 0.8 * 10 can evaluate slightly above 8; must not bump k to 9.
        assert subset_size(10, 0.8 + 1e-13) == 8

    def test_snap_just_above_two_thirds(self):
        assert subset_size(3, 2.0 / 3.0 + 1e-10) == 2

    @given(st.integers(1, 200), st.floats(1e-6, 1.0))
    def test_in_range(self, n, alpha):
        k = subset_size(n, alpha)
        assert 1 <= k <= n

    @given(st.integers(1, 100), st.floats(0.1, 0.9), st.floats(0.0, 0.1))
    def test_monotone_in_alpha(self, n, alpha, bump):
        assert subset_size(n, min(alpha + bump, 1.0)) >= subset_size(n, alpha)

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            subset_size(0, 0.5)
        with pytest.raises(ValueError):
            subset_size(5, 0.0)
        with pytest.raises(ValueError):
            subset_size(5, 1.5)


class TestSelectLowestLoss:
    def test_hand_sort(self):
        assert select_lowest_loss([5, 1, 3], 2).indices == (1, 2)

    def test_tie_break_by_index(self):
        assert select_lowest_loss([2, 2, 2], 2).indices == (0, 1)

    def test_interleaved(self):
        assert select_lowest_loss([0, 9, 0, 9], 2).indices == (0, 2)

    def test_k_too_large_rejected(self):
        with pytest.raises(ValueError):
            select_lowest_loss([1.0, 2.0], 3)

    @given(
        st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=40),
        st.data(),
    )
    @settings(max_examples=200)
    def test_selected_never_exceed_excluded(self, losses, data):
        k = data.draw(st.integers(1, len(losses)))
        subset = select_lowest_loss(losses, k)
        selected = [losses[i] for i in subset]
        excluded = [losses[i] for i in range(len(losses)) if i not in set(subset)]
        if excluded:
            assert max(selected) <= min(excluded)

    @given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=2, max_size=20, unique=True))
    @settings(max_examples=100)
    def test_permutation_consistency_distinct_losses(self, losses):
        # With distinct losses, the selected set is the same set of values
        # regardless of input order.
        k = max(1, len(losses) // 2)
        base = {losses[i] for i in select_lowest_loss(losses, k)}
        rev = losses[::-1]
        permuted = {rev[i] for i in select_lowest_loss(rev, k)}
        assert base == permuted


class TestTypes:
    def test_subset_validation(self):
        with pytest.raises(ValueError):
            Subset((2, 1))
        with pytest.raises(ValueError):
            Subset((1, 1))
        with pytest.raises(ValueError):
            Subset((-1, 0))

    def test_trim_config_validation(self):
        with pytest.raises(ValueError):
            TrimConfig(alpha=0.0)
        with pytest.raises(ValueError):
            TrimConfig(alpha=1.2)
        with pytest.raises(ValueError):
            TrimConfig(iterations=0)
        with pytest.raises(ValueError):
            TrimConfig(tie_break="random")

    def test_trim_config_guarantee_flag(self):
        assert not TrimConfig(alpha=0.8).below_guarantee
        assert TrimConfig(alpha=0.7).below_guarantee

    def test_sample_set_validation(self):
        with pytest.raises(ValueError):
            SampleSet(points=[[np.nan]])
        with pytest.raises(ValueError):
            SampleSet(points=[[1.0]], noise_scale=[1.0, 2.0])
        with pytest.raises(ValueError):
            SampleSet(points=[[1.0]], noise_scale=[-1.0])
        s = SampleSet(points=[[1.0, 2.0]], truth_mean=[0.0, 0.0])
        assert s.n == 1 and s.d == 2
