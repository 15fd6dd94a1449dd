import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from burstyic import (ChannelConfig, Correlation, DomainError, ParameterError, Region,
                      StateSequence, channel_output, classify_region, down_shift,
                      lowest_select, sample_states)
from burstyic.ldm import channel_output_blocks, trial_rng


def col(*bits):
    return np.array(bits, dtype=np.uint8)[:, None]


class TestShifts:
    def test_down_shift_moves_top_rows_down(self):
        assert down_shift(col(1, 1, 0), 2).ravel().tolist() == [0, 1, 1]

    def test_down_shift_full_is_identity(self):
        x = col(1, 0, 1, 1)
        assert np.array_equal(down_shift(x, 4), x)

    def test_down_shift_zero_clears(self):
        assert not down_shift(col(1, 1, 1), 0).any()

    def test_down_shift_rejects_large_shift(self):
        with pytest.raises(ParameterError):
            down_shift(col(1, 0), 3)

    def test_lowest_select(self):
        assert lowest_select(col(1, 0, 1), 1).ravel().tolist() == [0, 0, 1]
        x = col(1, 0, 1)
        assert np.array_equal(lowest_select(x, 3), x)
        assert not lowest_select(x, 0).any()
        with pytest.raises(ParameterError):
            lowest_select(x, 4)

    @given(st.integers(1, 8), st.data())
    def test_double_shift_clears_top(self, q, data):
        u = data.draw(st.integers(0, q))
        x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=q, max_size=q)), dtype=np.uint8)
        y = down_shift(down_shift(x, u), u)
        assert not y[: min(q, 2 * (q - u))].any()

    @given(st.integers(1, 6), st.integers(0, 6), st.data())
    def test_shift_equals_matrix_product(self, q, u, data):
        u = min(u, q)
        x = np.array(data.draw(st.lists(st.integers(0, 1), min_size=q, max_size=q)), dtype=np.uint8)
        S = np.zeros((q, q), dtype=int)
        for i in range(u):
            S[q - u + i, i] = 1
        assert np.array_equal(down_shift(x, u).ravel(), (S @ x) % 2)


class TestChannel:
    def test_interfered_output(self):
        cfg = ChannelConfig(3, 2, 0.5)
        y1, _ = channel_output(col(1, 1, 0), col(1, 0, 1), 1, 0, cfg)
        assert y1.ravel().tolist() == [1, 0, 0]

    def test_clean_output(self):
        cfg = ChannelConfig(3, 2, 0.5)
        y1, _ = channel_output(col(1, 1, 0), col(1, 0, 1), 0, 0, cfg)
        assert y1.ravel().tolist() == [1, 1, 0]

    def test_no_cross_link(self):
        cfg = ChannelConfig(3, 0, 0.5)
        x1, x2 = col(1, 0, 1), col(1, 1, 1)
        for b in (0, 1):
            y1, _ = channel_output(x1, x2, b, b, cfg)
            assert np.array_equal(y1, down_shift(x1, 3))

    def test_dimension_mismatch(self):
        with pytest.raises(ParameterError):
            channel_output(col(1, 0), col(1, 0, 1), 0, 0, ChannelConfig(3, 2, 0.5))

    @given(st.integers(1, 6), st.integers(0, 12), st.integers(1, 3), st.data())
    def test_no_interference_gives_parallel_channels(self, nd, nc, T, data):
        cfg = ChannelConfig(nd, nc, 0.5, T=T)
        bits = st.lists(st.integers(0, 1), min_size=cfg.q * T, max_size=cfg.q * T)
        x1 = np.array(data.draw(bits), dtype=np.uint8).reshape(cfg.q, T)
        x2 = np.array(data.draw(bits), dtype=np.uint8).reshape(cfg.q, T)
        y1, y2 = channel_output(x1, x2, 0, 0, cfg)
        assert np.array_equal(y1, down_shift(x1, nd))
        assert np.array_equal(y2, down_shift(x2, nd))

    @given(st.integers(1, 5), st.integers(0, 10), st.integers(1, 6), st.integers(0, 10**6))
    def test_block_channel_matches_single_blocks(self, nd, nc, K, seed):
        cfg = ChannelConfig(nd, nc, 0.5, T=2)
        rng = trial_rng(seed)
        X1 = rng.integers(0, 2, (K, cfg.q, 2), dtype=np.uint8)
        X2 = rng.integers(0, 2, (K, cfg.q, 2), dtype=np.uint8)
        b1, b2 = rng.integers(0, 2, K), rng.integers(0, 2, K)
        Y1, Y2 = channel_output_blocks(X1, X2, b1, b2, cfg)
        for k in range(K):
            y1, y2 = channel_output(X1[k], X2[k], int(b1[k]), int(b2[k]), cfg)
            assert np.array_equal(Y1[k], y1) and np.array_equal(Y2[k], y2)


class TestStates:
    @pytest.mark.parametrize("p,val", [(0.0, 0), (1.0, 1)])
    def test_degenerate_probabilities(self, p, val):
        s = sample_states(ChannelConfig(2, 1, p), 50, seed=3)
        assert np.all(s.b1 == val) and np.all(s.b2 == val)

    def test_statistics_independent(self):
        s = sample_states(ChannelConfig(2, 1, 0.5), 100_000, seed=11)
        assert abs(s.b1.mean() - 0.5) < 0.01
        assert abs(np.corrcoef(s.b1, s.b2)[0, 1]) < 0.02

    @given(st.floats(0, 1), st.integers(1, 200), st.integers(0, 2**63))
    def test_fully_correlated_states_match(self, p, K, seed):
        s = sample_states(ChannelConfig(2, 1, p, correlation=Correlation.FULLY_CORRELATED), K, seed)
        assert np.array_equal(s.b1, s.b2)

    def test_deterministic_per_seed_and_trial(self):
        cfg = ChannelConfig(2, 1, 0.3)
        a = sample_states(cfg, 100, seed=5, trial=2)
        b = sample_states(cfg, 100, seed=5, trial=2)
        c = sample_states(cfg, 100, seed=5, trial=3)
        assert np.array_equal(a.b1, b.b1)
        assert not np.array_equal(a.b1, c.b1)

    def test_counts_sum_to_K(self):
        s = StateSequence([0, 1, 1, 0], [0, 1, 0, 1])
        assert s.counts() == {"00": 1, "01": 1, "10": 1, "11": 1}
        assert s.K == 4

    def test_bad_state_bits(self):
        with pytest.raises(ParameterError):
            StateSequence([0, 2], [0, 1])


class TestRegions:
    @pytest.mark.parametrize("nd,nc,region", [
        (4, 2, Region.VWI), (3, 2, Region.WI), (1, 3, Region.VSI), (4, 3, Region.MI),
        (2, 3, Region.SI), (1, 1, Region.MI), (1, 2, Region.SI), (5, 0, Region.VWI),
    ])
    def test_examples_and_boundaries(self, nd, nc, region):
        assert classify_region(ChannelConfig(nd, nc, 0.5)) is region

    def test_zero_direct_gain(self):
        with pytest.raises(DomainError):
            classify_region(ChannelConfig(0, 2, 0.5))

    @given(st.integers(1, 200), st.integers(0, 500))
    def test_partition_matches_alpha_intervals(self, nd, nc):
        a = nc / nd
        expect = (Region.VWI if 2 * nc <= nd else Region.WI if 3 * nc <= 2 * nd else
                  Region.MI if nc <= nd else Region.SI if nc <= 2 * nd else Region.VSI)
        got = classify_region(ChannelConfig(nd, nc, 0.5))
        assert got is expect
        if got is Region.VSI:
            assert a > 2


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(p=1.5), dict(p=-0.1), dict(T=0), dict(n_d=-1)])
    def test_rejects_invalid(self, kw):
        args = dict(n_d=2, n_c=1, p=0.5) | kw
        with pytest.raises(ParameterError):
            ChannelConfig(**args)

    def test_derived(self):
        cfg = ChannelConfig(2, 3, 0.5)
        assert cfg.q == 3 and cfg.alpha == 1.5
