"""Global-CSIRT copy schemes for moderate and strong interference.

Blocks are grouped by joint state: A = (0,1), B = (1,1), C = (1,0) and
D = (0,0).  The first j_min = min(j_A, j_B, j_C) blocks of classes A, B and
C form triples in which part of a signal sent in a clean block is repeated
in the doubly interfered block, so that each receiver can strip the
interference off its one-sided interfered block.  D blocks carry n_d
uncoded bits per user, and leftover A/B/C blocks use a fixed interference
avoiding level plan.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError, InvariantViolation, ParameterError
from ..ldm import (STREAM_PAYLOAD, ChannelConfig, Region, StateSequence, channel_output_blocks,
                   classify_region, sample_states, trial_rng)
from .common import cross_image, direct_image, direct_rows, transcript_lines
from .outcome import SimOutcome
from .plan import avoidance_rows

__all__ = ["GLOBAL_SCHEMES", "run_scheme_global", "states_from_counts", "global_target",
           "triple_bits", "residual_rate"]

GLOBAL_SCHEMES = ("G_MI", "G_SI")
_CLASS_OF = {(0, 1): "A", (1, 1): "B", (1, 0): "C", (0, 0): "D"}


def states_from_counts(counts: dict) -> StateSequence:
    """Deterministic state sequence with the given class counts, in A, B, C, D order."""
    b1, b2 = [], []
    for cls, (v1, v2) in (("A", (0, 1)), ("B", (1, 1)), ("C", (1, 0)), ("D", (0, 0))):
        n = int(counts.get(cls, 0))
        if n < 0:
            raise ParameterError("class counts must be nonnegative")
        b1 += [v1] * n
        b2 += [v2] * n
    return StateSequence(b1, b2)


def _check(cfg: ChannelConfig, scheme: str) -> None:
    region = classify_region(cfg)
    need = {"G_MI": Region.MI, "G_SI": Region.SI}.get(scheme)
    if need is None:
        raise ConfigurationError(f"unknown global scheme {scheme!r}")
    # alpha = 2/3 is classified as weak, but the copy scheme works there
    # and its rate agrees with the weak-interference formula
    if scheme == "G_MI" and region is Region.WI and 3 * cfg.n_c == 2 * cfg.n_d:
        return
    if region is not need:
        raise ConfigurationError(f"{scheme} needs the {need.value} region, got {region.value}")


def triple_bits(cfg: ChannelConfig, scheme: str) -> int:
    """Bits per user delivered by one A/B/C triple, per symbol."""
    return 2 * cfg.n_d if scheme == "G_MI" else cfg.n_d + cfg.n_c


def residual_rate(cfg: ChannelConfig) -> int:
    """Per-user bits per symbol of the avoidance plan used in leftover blocks."""
    return len(avoidance_rows(cfg))


def global_target(cfg: ChannelConfig, scheme: str, counts: dict | None = None) -> float:
    """Sum rate of the scheme, asymptotic (counts=None) or for realized class counts.

    Uses the rate of the level plan actually simulated in leftover blocks,
    which equals n_d - n_c/2 (moderate) or n_c/2 (strong) whenever that
    plan is optimal.
    """
    nd, p = cfg.n_d, cfg.p
    tb, rr = triple_bits(cfg, scheme), residual_rate(cfg)
    if counts is None:
        pmin = min(p * p, p * (1 - p))
        return 2 * (tb * pmin + nd * (1 - p) ** 2 + rr * (2 * p - p * p - 3 * pmin))
    jA, jB, jC, jD = (counts[c] for c in "ABCD")
    jmin = min(jA, jB, jC)
    K = jA + jB + jC + jD
    return 2 * (tb * jmin + nd * jD + rr * (jA + jB + jC - 3 * jmin)) / K


def _triple_tx(cfg: ChannelConfig, scheme: str, rng, T: int):
    """Signals of one user in its own clean block, block B and its own hit block."""
    nd, q = cfg.n_d, cfg.q
    clean, both, hit = (np.zeros((q, T), dtype=np.uint8) for _ in range(3))
    fresh = {}
    if scheme == "G_MI":
        f1 = rng.integers(0, 2, size=(nd, T), dtype=np.uint8)
        f2 = rng.integers(0, 2, size=(nd, T), dtype=np.uint8)
        clean[:nd] = f1
        both[:nd] = f1
        hit[:nd] = f2
        fresh = {"clean": f1, "hit": f2}
    else:
        t = cfg.n_c - nd
        top = rng.integers(0, 2, size=(t, T), dtype=np.uint8)
        copy = rng.integers(0, 2, size=(nd - t, T), dtype=np.uint8)
        extra = rng.integers(0, 2, size=(t, T), dtype=np.uint8)
        last = rng.integers(0, 2, size=(nd, T), dtype=np.uint8)
        clean[:t] = top
        clean[t:nd] = copy
        both[:nd - t] = copy
        both[nd - t:nd] = extra
        hit[:nd] = last
        fresh = {"top": top, "copy": copy, "extra": extra, "last": last}
    return clean, both, hit, fresh


def _triple_rx(cfg: ChannelConfig, scheme: str, y_clean, y_both, y_hit):
    """Decode one triple at a receiver; returns the recovered fresh signals."""
    nd, q = cfg.n_d, cfg.q
    T = y_clean.shape[1]
    x_clean = direct_rows(cfg, y_clean)
    if scheme == "G_MI":
        f1 = x_clean.copy()
        known = np.zeros((q, T), dtype=np.uint8)
        known[:nd] = f1
        image = y_both ^ direct_image(cfg, known)
        f2 = direct_rows(cfg, y_hit ^ image)
        return {"clean": f1, "hit": f2}
    t = cfg.n_c - nd
    top, copy = x_clean[:t].copy(), x_clean[t:nd].copy()
    known = np.zeros((q, T), dtype=np.uint8)
    known[:nd - t] = copy
    z = y_both ^ direct_image(cfg, known)
    # the interferer's block-B signal fills output rows 0..n_d-1 and our
    # fresh levels land on rows n_d..q-1
    extra = z[nd:q].copy()
    other_copy = z[:nd - t]
    other = np.zeros((q, T), dtype=np.uint8)
    other[t:nd] = other_copy
    last = direct_rows(cfg, y_hit ^ cross_image(cfg, other))
    return {"top": top, "copy": copy, "extra": extra, "last": last}


def run_scheme_global(cfg: ChannelConfig, scheme: str, K: int | None = None, seed: int = 0,
                      trial: int = 0, states: StateSequence | None = None,
                      record: bool = False) -> SimOutcome:
    """One trial of a global-CSIRT copy scheme.

    ``states`` forces a realized state sequence; otherwise K blocks are
    drawn from (cfg, seed, trial).
    """
    _check(cfg, scheme)
    if cfg.n_d < 1:
        raise ConfigurationError("simulation needs n_d >= 1")
    if states is None:
        if K is None or K < 1:
            raise ParameterError("K must be positive when states are not given")
        states = sample_states(cfg, K, seed, trial)
    K, T, q, nd = states.K, cfg.T, cfg.q, cfg.n_d
    cls = [_CLASS_OF[(int(a), int(b))] for a, b in zip(states.b1, states.b2)]
    idx = {c: [k for k in range(K) if cls[k] == c] for c in "ABCD"}
    jmin = min(len(idx["A"]), len(idx["B"]), len(idx["C"]))
    plan_rows = avoidance_rows(cfg)
    rng = trial_rng(seed, trial, STREAM_PAYLOAD)

    X = np.zeros((2, K, q, T), dtype=np.uint8)
    triples = [(idx["A"][i], idx["B"][i], idx["C"][i]) for i in range(jmin)]
    sent = {0: [], 1: []}
    # user 1's clean block is A, user 2's is C
    for a, bb, c in triples:
        for u, (kc, kh) in enumerate(((a, c), (c, a))):
            clean, both, hit, fresh = _triple_tx(cfg, scheme, rng, T)
            X[u, kc], X[u, bb], X[u, kh] = clean, both, hit
            sent[u].append(fresh)
    plain = {0: [], 1: []}
    for k in idx["D"]:
        for u in range(2):
            X[u, k, :nd] = rng.integers(0, 2, size=(nd, T), dtype=np.uint8)
    leftover = sorted(idx["A"][jmin:] + idx["B"][jmin:] + idx["C"][jmin:])
    for k in leftover:
        for u in range(2):
            X[u, k, plan_rows] = rng.integers(0, 2, size=(len(plan_rows), T), dtype=np.uint8)

    Y = channel_output_blocks(X[0], X[1], states.b1, states.b2, cfg)

    delivered, errors = [], 0
    for u in range(2):
        Yu, bu = Y[u], (states.b1, states.b2)[u]
        bits = 0
        for i, (a, bb, c) in enumerate(triples):
            kc, kh = (a, c) if u == 0 else (c, a)
            got = _triple_rx(cfg, scheme, Yu[kc], Yu[bb], Yu[kh])
            for name, sig in sent[u][i].items():
                wrong = int(np.sum(got[name] != sig))
                errors += wrong
                bits += 0 if wrong else sig.size
        for k in idx["D"]:
            if bu[k]:
                raise InvariantViolation("class D block with interference")
            wrong = int(np.sum(direct_rows(cfg, Yu[k]) != X[u, k, :nd]))
            errors += wrong
            bits += 0 if wrong else nd * T
        for k in leftover:
            got = direct_rows(cfg, Yu[k])[plan_rows]
            wrong = int(np.sum(got != X[u, k, plan_rows]))
            errors += wrong
            bits += 0 if wrong else len(plan_rows) * T
        delivered.append(bits)

    counts = {c: len(idx[c]) for c in "ABCD"}
    lines = transcript_lines(states, X[0], X[1], Y[0], Y[1]) if record else None
    return SimOutcome(scheme, errors == 0, tuple(delivered), K * T, states.counts(),
                      global_target(cfg, scheme), bit_errors=errors,
                      realized_target=global_target(cfg, scheme, counts), transcript=lines)
