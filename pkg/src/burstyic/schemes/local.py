"""Erasure-coded local-CSIR schemes for the ergodic channel."""

from __future__ import annotations

import numpy as np

from ..bounds import CSI, Setting, Timing, ergodic_achievable
from ..errors import ConfigurationError, InvariantViolation, ParameterError
from ..ldm import (STREAM_PAYLOAD, ChannelConfig, channel_output_blocks, sample_states,
                   trial_rng)
from .common import direct_rows, seed_for, transcript_lines
from .erasure import DecodeFailure, ErasureCode, code_dimension, erasure_decode, erasure_encode
from .outcome import SimOutcome
from .plan import Level, local_plan

__all__ = ["LOCAL_SCHEMES", "run_scheme_local", "local_target"]

LOCAL_SCHEMES = ("S1_vwi_wi_mi", "S2_wi_highp", "S3_si")


def local_target(cfg: ChannelConfig) -> float:
    return ergodic_achievable(cfg, Setting(Timing.ERGODIC, CSI.LOCAL_CSIR)).value


def run_scheme_local(cfg: ChannelConfig, scheme: str, K: int, seed: int = 0,
                     margin: float = 0.05, trial: int = 0, record: bool = False) -> SimOutcome:
    """One trial over K coherence blocks.

    Uncoded levels never see interference.  Each erasure-coded level carries
    its own codeword of length K*T at rate (1 - p)(1 - margin); a receiver
    erases every symbol of a block in which its state bit is 1.
    """
    if cfg.n_d < 1:
        raise ConfigurationError("simulation needs n_d >= 1")
    if K < 1:
        raise ParameterError("K must be positive")
    if not 0.0 <= margin < 1.0:
        raise ParameterError("margin must lie in [0, 1)")
    plan = local_plan(cfg, scheme)
    states = sample_states(cfg, K, seed, trial)
    rng = trial_rng(seed, trial, STREAM_PAYLOAD)
    T, q = cfg.T, cfg.q
    n = K * T
    k = min(code_dimension(n, (1 - cfg.p) * (1 - margin)), n - 1)
    unc, era = plan.rows(Level.UNCODED), plan.rows(Level.ERASURE)

    X = np.zeros((2, K, q, T), dtype=np.uint8)
    msgs, codes = [], []
    for u in range(2):
        X[u][:, unc] = rng.integers(0, 2, size=(K, len(unc), T), dtype=np.uint8)
        if era and k > 0:
            code = ErasureCode(k, n, seed_for(seed, trial, u))
            m = rng.integers(0, 2, size=(len(era), k), dtype=np.uint8)
            X[u][:, era] = erasure_encode(code, m).reshape(len(era), K, T).transpose(1, 0, 2)
            msgs.append(m)
            codes.append(code)
        else:
            msgs.append(None)
            codes.append(None)
    Y1, Y2 = channel_output_blocks(X[0], X[1], states.b1, states.b2, cfg)

    delivered, failures, errors = [], 0, 0
    for u, (Y, b) in enumerate(((Y1, states.b1), (Y2, states.b2))):
        got = direct_rows(cfg, Y)
        bits = 0
        wrong = int(np.sum(got[:, unc] != X[u][:, unc]))
        errors += wrong
        if not wrong:
            bits += len(unc) * n
        if codes[u] is not None:
            erased = np.repeat(b.astype(bool), T)
            recv = got[:, era].transpose(1, 0, 2).reshape(len(era), n)
            sent = X[u][:, era].transpose(1, 0, 2).reshape(len(era), n)
            if np.any(recv[:, ~erased] != sent[:, ~erased]):
                raise InvariantViolation("an unerased coded symbol was corrupted")
            try:
                dec = erasure_decode(codes[u], recv, erased)
            except DecodeFailure:
                failures += 1
            else:
                if np.array_equal(dec, msgs[u]):
                    bits += len(era) * k
                else:
                    errors += int(np.sum(dec != msgs[u]))
        delivered.append(bits)

    lines = transcript_lines(states, X[0], X[1], Y1, Y2) if record else None
    return SimOutcome(scheme, failures == 0 and errors == 0, tuple(delivered), n,
                      states.counts(), local_target(cfg), decode_failures=failures,
                      bit_errors=errors, transcript=lines)
