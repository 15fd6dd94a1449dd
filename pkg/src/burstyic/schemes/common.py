"""Helpers shared by the simulators."""

from __future__ import annotations

import numpy as np

from ..ldm import ChannelConfig, StateSequence
from .transcript import format_line


def direct_rows(cfg: ChannelConfig, y: np.ndarray) -> np.ndarray:
    """Undo the direct-link shift: level i of the own input sits at output row i + q - n_d."""
    off = cfg.q - cfg.n_d
    return y[..., off:off + cfg.n_d, :]


def cross_image(cfg: ChannelConfig, x: np.ndarray) -> np.ndarray:
    """Interference image S_{n_c} x for a (..., q, T) stack."""
    q, nc = cfg.q, cfg.n_c
    out = np.zeros_like(x)
    if nc:
        out[..., q - nc:, :] = x[..., :nc, :]
    return out


def direct_image(cfg: ChannelConfig, x: np.ndarray) -> np.ndarray:
    q, nd = cfg.q, cfg.n_d
    out = np.zeros_like(x)
    if nd:
        out[..., q - nd:, :] = x[..., :nd, :]
    return out


def transcript_lines(states: StateSequence, X1, X2, Y1, Y2) -> tuple[str, ...]:
    return tuple(format_line(k, states.b1[k], states.b2[k], X1[k], X2[k], Y1[k], Y2[k])
                 for k in range(states.K))


def seed_for(seed: int, trial: int, user: int) -> int:
    """Independent 64-bit code seed per (seed, trial, user)."""
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), int(trial), 100 + int(user)])
    return int(ss.generate_state(1, np.uint64)[0])
