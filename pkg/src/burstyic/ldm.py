"""Linear deterministic model of the two-user bursty interference channel.

Signals are q x T bit matrices over GF(2), row 0 being the most significant
sub-channel.  Channel gains act as down-shifts: a link of gain u delivers the
top u rows of its input to the bottom u rows of the output.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "Correlation",
    "Region",
    "ChannelConfig",
    "StateSequence",
    "down_shift",
    "lowest_select",
    "channel_output",
    "channel_output_blocks",
    "trial_rng",
    "sample_states",
    "classify_region",
]


class Correlation(str, enum.Enum):
    INDEPENDENT = "ind"
    FULLY_CORRELATED = "full"


class Region(str, enum.Enum):
    VWI = "VWI"
    WI = "WI"
    MI = "MI"
    SI = "SI"
    VSI = "VSI"


@dataclass(frozen=True)
class ChannelConfig:
    """Gains, burstiness and coherence length of the symmetric channel."""

    n_d: int
    n_c: int
    p: float
    T: int = 1
    correlation: Correlation = Correlation.INDEPENDENT

    def __post_init__(self) -> None:
        for name in ("n_d", "n_c", "T"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ParameterError(f"{name} must be an integer, got {v!r}")
        if self.n_d < 0 or self.n_c < 0:
            raise ParameterError("gains must be nonnegative")
        if self.T < 1:
            raise ParameterError("T must be at least 1")
        p = float(self.p)
        if not 0.0 <= p <= 1.0 or p != p:
            raise ParameterError(f"p must lie in [0, 1], got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n_d", int(self.n_d))
        object.__setattr__(self, "n_c", int(self.n_c))
        object.__setattr__(self, "T", int(self.T))
        object.__setattr__(self, "correlation", Correlation(self.correlation))

    @property
    def q(self) -> int:
        return max(self.n_d, self.n_c)

    @property
    def alpha(self) -> float:
        if self.n_d == 0:
            raise DomainError("alpha is undefined for n_d = 0")
        return self.n_c / self.n_d

    @property
    def alpha_exact(self) -> Fraction:
        if self.n_d == 0:
            raise DomainError("alpha is undefined for n_d = 0")
        return Fraction(self.n_c, self.n_d)

    def with_(self, **changes) -> "ChannelConfig":
        fields = dict(n_d=self.n_d, n_c=self.n_c, p=self.p, T=self.T,
                      correlation=self.correlation)
        fields.update(changes)
        return ChannelConfig(**fields)


@dataclass(frozen=True)
class StateSequence:
    """Realized interference states for K coherence blocks."""

    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self) -> None:
        b1 = np.asarray(self.b1, dtype=np.uint8)
        b2 = np.asarray(self.b2, dtype=np.uint8)
        if b1.ndim != 1 or b1.shape != b2.shape or b1.size == 0:
            raise ParameterError("state vectors must be 1-D, nonempty and of equal length")
        if np.any(b1 > 1) or np.any(b2 > 1):
            raise ParameterError("state bits must be 0 or 1")
        b1.setflags(write=False)
        b2.setflags(write=False)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)

    @property
    def K(self) -> int:
        return int(self.b1.size)

    def counts(self) -> dict[str, int]:
        """Number of blocks in each joint state, keyed "b1b2"."""
        out = {}
        for v1 in (0, 1):
            for v2 in (0, 1):
                out[f"{v1}{v2}"] = int(np.sum((self.b1 == v1) & (self.b2 == v2)))
        return out


def _check_block(x: np.ndarray, name: str = "x") -> np.ndarray:
    x = np.asarray(x)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ParameterError(f"{name} must be a q x T bit matrix")
    if x.size and (x.min() < 0 or x.max() > 1):
        raise ParameterError(f"{name} entries must be 0 or 1")
    return x.astype(np.uint8, copy=False)


def down_shift(x: np.ndarray, u: int) -> np.ndarray:
    """Apply S_u: the top u input rows land on the bottom u output rows."""
    x = _check_block(x)
    q = x.shape[0]
    if not 0 <= u <= q:
        raise ParameterError(f"shift {u} outside [0, {q}]")
    out = np.zeros_like(x)
    if u:
        out[q - u:] = x[:u]
    return out


def lowest_select(x: np.ndarray, d: int) -> np.ndarray:
    """Keep the d least significant rows and zero the rest."""
    x = _check_block(x)
    q = x.shape[0]
    if not 0 <= d <= q:
        raise ParameterError(f"selection {d} outside [0, {q}]")
    out = np.zeros_like(x)
    if d:
        out[q - d:] = x[q - d:]
    return out


def channel_output(x1: np.ndarray, x2: np.ndarray, b1: int, b2: int,
                   cfg: ChannelConfig) -> tuple[np.ndarray, np.ndarray]:
    """Outputs of both receivers for one coherence block."""
    x1 = _check_block(x1, "x1")
    x2 = _check_block(x2, "x2")
    q = cfg.q
    if x1.shape != x2.shape or x1.shape[0] != q:
        raise ParameterError(f"inputs must both have {q} rows and equal width")
    if b1 not in (0, 1) or b2 not in (0, 1):
        raise ParameterError("state bits must be 0 or 1")
    y1 = down_shift(x1, cfg.n_d)
    y2 = down_shift(x2, cfg.n_d)
    if b1:
        y1 ^= down_shift(x2, cfg.n_c)
    if b2:
        y2 ^= down_shift(x1, cfg.n_c)
    return y1, y2


STREAM_STATES = 0
STREAM_PAYLOAD = 1
STREAM_CODE = 2


def _shift_rows(X: np.ndarray, u: int) -> np.ndarray:
    q = X.shape[1]
    out = np.zeros_like(X)
    if u:
        out[:, q - u:] = X[:, :u]
    return out


def channel_output_blocks(X1: np.ndarray, X2: np.ndarray, b1, b2,
                          cfg: ChannelConfig) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized channel over K blocks; inputs have shape (K, q, T)."""
    X1 = np.asarray(X1, dtype=np.uint8)
    X2 = np.asarray(X2, dtype=np.uint8)
    if X1.ndim != 3 or X1.shape != X2.shape or X1.shape[1] != cfg.q:
        raise ParameterError(f"inputs must both have shape (K, {cfg.q}, T)")
    m1 = np.asarray(b1, dtype=np.uint8)[:, None, None]
    m2 = np.asarray(b2, dtype=np.uint8)[:, None, None]
    if m1.shape[0] != X1.shape[0] or m2.shape[0] != X1.shape[0]:
        raise ParameterError("one state pair per block is required")
    y1 = _shift_rows(X1, cfg.n_d) ^ (m1 * _shift_rows(X2, cfg.n_c))
    y2 = _shift_rows(X2, cfg.n_d) ^ (m2 * _shift_rows(X1, cfg.n_c))
    return y1, y2


def trial_rng(seed: int, trial: int = 0, stream: int = STREAM_STATES) -> np.random.Generator:
    """Counter-based Philox stream keyed by (seed, trial, stream).

    Streams for different trial indices are statistically independent and do
    not depend on the order in which trials are run.  ``stream`` separates
    the state, payload and code draws of one trial.
    """
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), int(trial), int(stream)])
    return np.random.Generator(np.random.Philox(ss))


def sample_states(cfg: ChannelConfig, K: int, seed: int, trial: int = 0) -> StateSequence:
    if K < 1:
        raise ParameterError("K must be positive")
    rng = trial_rng(seed, trial)
    u = rng.random((2, K))
    b1 = (u[0] < cfg.p).astype(np.uint8)
    if cfg.correlation is Correlation.FULLY_CORRELATED:
        b2 = b1.copy()
    else:
        b2 = (u[1] < cfg.p).astype(np.uint8)
    return StateSequence(b1, b2)


def classify_region(cfg: ChannelConfig) -> Region:
    """Interference region with upper endpoints inclusive."""
    if cfg.n_d == 0:
        raise DomainError("alpha is undefined for n_d = 0")
    nd, nc = cfg.n_d, cfg.n_c
    if 2 * nc <= nd:
        return Region.VWI
    if 3 * nc <= 2 * nd:
        return Region.WI
    if nc <= nd:
        return Region.MI
    if nc <= 2 * nd:
        return Region.SI
    return Region.VSI
