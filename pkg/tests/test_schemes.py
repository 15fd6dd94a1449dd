import math
import statistics

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burstyic import ChannelConfig, ConfigurationError, Correlation, channel_output
from burstyic.schemes import (LevelPlan, Level, Role, CopiedFrom, run_scheme_global, run_scheme_local,
                              run_scheme_qs, states_from_counts)
from burstyic.schemes.common import direct_rows
from burstyic.schemes.globalcsi import global_target
from burstyic.schemes.plan import avoidance_rows, interfered_rows, local_plan
from burstyic.schemes.transcript import pack_block, parse_line, unpack_block
from burstyic import ParameterError

PAIRS = [(0, 0), (0, 1), (1, 0), (1, 1)]


class TestQuasiStatic:
    @pytest.mark.parametrize("b,total", [((0, 0), 8), ((1, 1), 6), ((0, 1), 7), ((1, 0), 7)])
    def test_vwi_example(self, b, total):
        out = run_scheme_qs(ChannelConfig(4, 1, 0.5), "VWI_opportunistic", b)
        assert out.decoded_ok and out.empirical_sum_rate == total == out.target

    def test_wi_example(self):
        out = run_scheme_qs(ChannelConfig(5, 3, 0.5), "WI_opportunistic", (0, 1))
        assert out.decoded_ok and out.bits_delivered == (4, 3)

    @settings(max_examples=60)
    @given(st.integers(1, 12), st.integers(0, 12), st.sampled_from(PAIRS), st.integers(0, 10**6),
           st.integers(1, 4))
    def test_table_rates(self, nd, nc, b, seed, T):
        cfg = ChannelConfig(nd, nc, 0.5, T=T)
        if 2 * nc <= nd:
            scheme, R, dR = "VWI_opportunistic", nd - nc, nc
        elif 3 * nc <= 2 * nd:
            scheme, R, dR = "WI_opportunistic", nc, 2 * nd - 3 * nc
        else:
            return
        out = run_scheme_qs(cfg, scheme, b, seed=seed)
        assert out.decoded_ok and out.bit_errors == 0
        for u in range(2):
            assert out.bits_delivered[u] == T * (R + (dR if b[u] == 0 else 0))

    @pytest.mark.parametrize("scheme,nd,nc", [("VWI_opportunistic", 5, 3), ("WI_opportunistic", 5, 2),
                                              ("WI_opportunistic", 4, 4), ("nope", 5, 2)])
    def test_region_mismatch(self, scheme, nd, nc):
        with pytest.raises(ConfigurationError):
            run_scheme_qs(ChannelConfig(nd, nc, 0.5), scheme, (0, 0))


class TestLocal:
    @pytest.mark.parametrize("scheme,cfg,per_user,target", [
        ("S1_vwi_wi_mi", (4, 2, 0.25), 3.35, 3.5),
        ("S2_wi_highp", (5, 3, 0.75), 3.225, 3.25),
        ("S3_si", (2, 3, 0.25), 1.675, 1.75),
    ])
    def test_accounting_examples(self, scheme, cfg, per_user, target):
        cfg = ChannelConfig(*cfg)
        outs = [run_scheme_local(cfg, scheme, 2000, seed=s, margin=0.1) for s in range(5)]
        good = [o for o in outs if o.decoded_ok]
        assert len(good) >= 4
        for o in good:
            assert o.per_user_rate == pytest.approx((per_user, per_user), abs=1e-12)
            assert o.target == pytest.approx(2 * target)

    def test_zero_block_earns_nothing(self):
        cfg = ChannelConfig(5, 3, 0.75)
        plan = local_plan(cfg, "S2_wi_highp")
        assert plan.rows(Level.ZERO)[:1] == [2]
        out = run_scheme_local(cfg, "S2_wi_highp", 400, seed=3, margin=0.1)
        k = math.floor(0.25 * 0.9 * 400 + 1e-9)
        expect = len(plan.rows(Level.UNCODED)) * 400 + len(plan.rows(Level.ERASURE)) * k
        assert all(b in (expect, expect - k) for b in out.bits_delivered)

    @settings(max_examples=25)
    @given(st.integers(0, 10**6), st.sampled_from([
        ("S1_vwi_wi_mi", (4, 2, 0.25)), ("S1_vwi_wi_mi", (6, 5, 0.4)), ("S1_vwi_wi_mi", (5, 1, 0.8)),
        ("S2_wi_highp", (5, 3, 0.6)), ("S3_si", (2, 3, 0.25)), ("S3_si", (4, 7, 0.5))]))
    def test_uncoded_levels_never_fail(self, seed, case):
        scheme, cfg = case
        out = run_scheme_local(ChannelConfig(*cfg, T=2), scheme, 200, seed=seed)
        assert out.bit_errors == 0
        assert out.decode_failures <= 2

    def test_decode_failures_are_counted(self):
        # a tiny margin on a short block fails often but never raises
        outs = [run_scheme_local(ChannelConfig(4, 2, 0.5), "S1_vwi_wi_mi", 40, seed=s, margin=0.0)
                for s in range(30)]
        assert any(o.decode_failures for o in outs)
        assert all(o.bit_errors == 0 for o in outs)
        assert all(not o.decoded_ok for o in outs if o.decode_failures)

    @pytest.mark.parametrize("scheme,cfg", [("S1_vwi_wi_mi", (5, 4, 0.6)), ("S2_wi_highp", (5, 4, 0.3)),
                                            ("S3_si", (4, 5, 0.6)), ("S3_si", (5, 4, 0.3))])
    def test_preconditions(self, scheme, cfg):
        with pytest.raises(ConfigurationError):
            run_scheme_local(ChannelConfig(*cfg), scheme, 100)

    def test_deterministic(self):
        cfg = ChannelConfig(4, 2, 0.25, correlation=Correlation.FULLY_CORRELATED)
        a = run_scheme_local(cfg, "S1_vwi_wi_mi", 300, seed=9, trial=2)
        b = run_scheme_local(cfg, "S1_vwi_wi_mi", 300, seed=9, trial=2)
        assert a == b


class TestGlobal:
    def test_mi_forced_counts(self):
        counts = dict(A=1, B=1, C=1, D=1)
        out = run_scheme_global(ChannelConfig(3, 2, 0.5), "G_MI", states=states_from_counts(counts))
        assert out.decoded_ok and out.bit_errors == 0
        assert out.per_user_rate == (2.25, 2.25)

    def test_si_forced_counts(self):
        counts = dict(A=1, B=1, C=1, D=1)
        out = run_scheme_global(ChannelConfig(2, 3, 0.5), "G_SI", states=states_from_counts(counts))
        assert out.decoded_ok
        # one triple carries n_d + n_c bits per user, the clean block n_d
        assert out.per_user_rate == (1.75, 1.75)

    @pytest.mark.xfail(strict=True, reason="one triple carries (n_d + n_c) bits per user, not twice "
                                           "that; the per-user rate is (5 + 2)/4 = 1.75")
    def test_si_forced_counts_listed_value(self):
        counts = dict(A=1, B=1, C=1, D=1)
        out = run_scheme_global(ChannelConfig(2, 3, 0.5), "G_SI", states=states_from_counts(counts))
        assert out.per_user_rate[0] == pytest.approx(3)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.sampled_from([
        ("G_MI", 5, 4), ("G_MI", 3, 2), ("G_MI", 6, 5), ("G_MI", 7, 7), ("G_MI", 8, 6),
        ("G_SI", 3, 4), ("G_SI", 2, 3), ("G_SI", 4, 7), ("G_SI", 5, 10), ("G_SI", 6, 7)]),
        st.floats(0.05, 0.95), st.integers(1, 2))
    def test_zero_error_and_exact_accounting(self, seed, case, p, T):
        scheme, nd, nc = case
        out = run_scheme_global(ChannelConfig(nd, nc, p, T=T), scheme, K=150, seed=seed)
        assert out.decoded_ok and out.bit_errors == 0
        assert out.empirical_sum_rate == pytest.approx(out.realized_target, abs=1e-12)
        assert sum(out.state_counts.values()) == 150

    @pytest.mark.parametrize("scheme,nd,nc,p,target", [("G_MI", 5, 4, 0.5, 7.5), ("G_SI", 3, 4, 0.5, 5.0)])
    def test_large_K_reaches_formula(self, scheme, nd, nc, p, target):
        cfg = ChannelConfig(nd, nc, p)
        assert global_target(cfg, scheme) == pytest.approx(target)
        rates = [run_scheme_global(cfg, scheme, K=10_000, seed=s).empirical_sum_rate for s in range(3)]
        assert abs(statistics.median(rates) - target) < 0.05

    def test_convergence(self):
        cfg = ChannelConfig(5, 4, 0.5)
        gaps = []
        for K in (100, 1000, 10_000):
            rates = [run_scheme_global(cfg, "G_MI", K=K, seed=s).empirical_sum_rate for s in range(31)]
            gaps.append(abs(statistics.median(rates) - 7.5))
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 5 / math.sqrt(10_000)

    def test_residual_plan_rate(self):
        # the leftover plan reaches n_d - n_c/2 when the offset chain splits evenly
        assert len(avoidance_rows(ChannelConfig(5, 4, 0.5))) == 3
        assert len(avoidance_rows(ChannelConfig(3, 4, 0.5))) == 2
        assert len(avoidance_rows(ChannelConfig(60, 50, 0.5))) == 30

    @pytest.mark.parametrize("scheme,nd,nc", [("G_MI", 3, 4), ("G_SI", 5, 4), ("G_MI", 5, 2), ("G_XX", 5, 4)])
    def test_region_mismatch(self, scheme, nd, nc):
        with pytest.raises(ConfigurationError):
            run_scheme_global(ChannelConfig(nd, nc, 0.5), scheme, K=10)


class TestChannelConsistency:
    @settings(max_examples=80)
    @given(st.integers(1, 10), st.integers(0, 20), st.integers(0, 1), st.integers(0, 10**6))
    def test_erased_levels(self, nd, nc, b, seed):
        cfg = ChannelConfig(nd, nc, 0.5, T=64)
        rng = np.random.default_rng(seed)
        x1, x2 = rng.integers(0, 2, (2, cfg.q, 64), dtype=np.uint8)
        y1, _ = channel_output(x1, x2, b, 0, cfg)
        hit = {i for i in range(nd) if np.any(direct_rows(cfg, y1)[i] != x1[i])}
        assert hit == (interfered_rows(cfg) if b else set())

    @settings(max_examples=40)
    @given(st.integers(1, 10), st.integers(0, 20), st.integers(0, 10**6))
    def test_erased_levels_top_only_interferer(self, nd, nc, seed):
        cfg = ChannelConfig(nd, nc, 0.5, T=64)
        rng = np.random.default_rng(seed)
        x1, x2 = rng.integers(0, 2, (2, cfg.q, 64), dtype=np.uint8)
        x2[nd:] = 0
        y1, _ = channel_output(x1, x2, 1, 0, cfg)
        hit = {i for i in range(nd) if np.any(direct_rows(cfg, y1)[i] != x1[i])}
        assert hit == interfered_rows(cfg, active=nd)

    @settings(max_examples=30)
    @given(st.integers(1, 8), st.integers(0, 16), st.integers(0, 10**6))
    def test_avoidance_rows_are_clean(self, nd, nc, seed):
        cfg = ChannelConfig(nd, nc, 0.5, T=8)
        rows = avoidance_rows(cfg)
        rng = np.random.default_rng(seed)
        x1, x2 = np.zeros((2, cfg.q, 8), dtype=np.uint8)
        x1[rows] = rng.integers(0, 2, (len(rows), 8))
        x2[rows] = rng.integers(0, 2, (len(rows), 8))
        y1, _ = channel_output(x1, x2, 1, 1, cfg)
        assert np.array_equal(direct_rows(cfg, y1)[rows], x1[rows])


class TestTranscript:
    @given(st.integers(1, 17), st.integers(1, 5), st.integers(0, 10**6))
    def test_block_roundtrip(self, q, T, seed):
        x = np.random.default_rng(seed).integers(0, 2, (q, T), dtype=np.uint8)
        assert np.array_equal(unpack_block(pack_block(x), q), x)

    def test_msb_first(self):
        assert pack_block(np.array([[1], [0], [0], [0], [1]])) == "11"

    def test_rejects_oversized_word(self):
        with pytest.raises(ParameterError):
            unpack_block("ff", 4)



CFG_G, CFG_L, CFG_Q = ChannelConfig(5, 4, 0.5, T=2), ChannelConfig(2, 3, 0.25), ChannelConfig(5, 3, 0.5)


@pytest.mark.parametrize("cfg,runner", [
    (CFG_G, lambda: run_scheme_global(CFG_G, "G_MI", K=40, seed=8, record=True)),
    (CFG_L, lambda: run_scheme_local(CFG_L, "S3_si", 30, seed=4, record=True)),
    (CFG_Q, lambda: run_scheme_qs(CFG_Q, "WI_opportunistic", (1, 0), record=True)),
])
def test_transcript_replays_channel(cfg, runner):
    out = runner()
    assert len(out.transcript) == out.K
    for k, line in enumerate(out.transcript):
        kk, b1, b2, x1, x2, y1, y2 = parse_line(line, cfg.q)
        assert kk == k
        e1, e2 = channel_output(x1, x2, b1, b2, cfg)
        assert np.array_equal(e1, y1) and np.array_equal(e2, y2)
    assert out.transcript == runner().transcript


def test_plan_validation():
    with pytest.raises(ParameterError):
        LevelPlan(2, (Level.UNCODED,), (Role.NONE,))
    with pytest.raises(ParameterError):
        LevelPlan(2, (Level.UNCODED, CopiedFrom("A", 5)), (Role.NONE, Role.NONE))
    with pytest.raises(ConfigurationError):
        LevelPlan.from_segments(2, [(Level.UNCODED, Role.NONE, 3)])
