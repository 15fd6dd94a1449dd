"""Quasi-static opportunistic schemes for very weak and weak interference."""

from __future__ import annotations

import numpy as np

from ..bounds import CSI, Setting, Timing, qs_opportunistic
from ..errors import ConfigurationError
from ..ldm import STREAM_PAYLOAD, ChannelConfig, StateSequence, channel_output, trial_rng
from .common import direct_rows, transcript_lines
from .outcome import SimOutcome
from .plan import Level, Role, qs_plan

__all__ = ["QS_SCHEMES", "run_scheme_qs"]

QS_SCHEMES = ("VWI_opportunistic", "WI_opportunistic")


def _corner(cfg: ChannelConfig) -> tuple[float, float]:
    # the corner does not depend on p inside (0, 1)
    rates = qs_opportunistic(cfg.with_(p=0.5), Setting(Timing.QUASI_STATIC, CSI.LOCAL_CSIR))
    return rates.R / 2, rates.deltas["01"]


def run_scheme_qs(cfg: ChannelConfig, scheme: str, b: tuple[int, int], seed: int = 0,
                  trial: int = 0, record: bool = False) -> SimOutcome:
    """Send one codeword under a fixed state pair and decode at both receivers.

    The worst-case message is read from levels that are clean in every
    state; the opportunistic message is read only when the receiver's own
    state bit is 0.
    """
    if cfg.n_d < 1:
        raise ConfigurationError("simulation needs n_d >= 1")
    if tuple(b) not in {(0, 0), (0, 1), (1, 0), (1, 1)}:
        raise ConfigurationError(f"state pair must be two bits, got {b!r}")
    plan = qs_plan(cfg, scheme)
    rng = trial_rng(seed, trial, STREAM_PAYLOAD)
    T = cfg.T
    data_rows = plan.rows(Level.UNCODED)
    X = np.zeros((2, cfg.q, T), dtype=np.uint8)
    for u in range(2):
        X[u, data_rows] = rng.integers(0, 2, size=(len(data_rows), T), dtype=np.uint8)
    y1, y2 = channel_output(X[0], X[1], b[0], b[1], cfg)

    delivered, ok, errors = [], True, 0
    for u, (y, bu) in enumerate(((y1, b[0]), (y2, b[1]))):
        got = direct_rows(cfg, y)
        bits = 0
        for role in (Role.WORST, Role.OPPORTUNISTIC):
            rows = plan.rows(Level.UNCODED, role)
            if role is Role.OPPORTUNISTIC and bu:
                continue
            wrong = int(np.sum(got[rows] != X[u, rows]))
            errors += wrong
            if wrong:
                ok = False
            else:
                bits += len(rows) * T
        delivered.append(bits)

    R_i, dR_i = _corner(cfg)
    target = 2 * R_i + dR_i * ((b[0] == 0) + (b[1] == 0))
    states = StateSequence([b[0]], [b[1]])
    lines = transcript_lines(states, X[:1], X[1:], y1[None], y2[None]) if record else None
    return SimOutcome(scheme, ok, tuple(delivered), T, states.counts(), float(target),
                      bit_errors=errors, realized_target=float(target), transcript=lines)
