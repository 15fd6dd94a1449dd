"""Random linear codes over GF(2) used as binary erasure channel codes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import gf2
from ..errors import BurstyICError, ParameterError
from ..ldm import STREAM_CODE, trial_rng

__all__ = ["ErasureCode", "DecodeFailure", "erasure_encode", "erasure_decode", "code_dimension"]


class DecodeFailure(BurstyICError):
    """The unerased generator columns do not span the message space."""


@dataclass(frozen=True)
class ErasureCode:
    k: int
    n: int
    seed: int
    generator: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        if not 0 < self.k < self.n:
            raise ParameterError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.generator is None:
            g = trial_rng(self.seed, 0, STREAM_CODE).integers(0, 2, size=(self.k, self.n), dtype=np.uint8)
            object.__setattr__(self, "generator", g)
        elif self.generator.shape != (self.k, self.n):
            raise ParameterError("generator must be k x n")
        self.generator.setflags(write=False)

    @property
    def rate(self) -> float:
        return self.k / self.n


def code_dimension(n: int, rate: float) -> int:
    return int(np.floor(rate * n + 1e-9))


def erasure_encode(code: ErasureCode, message: np.ndarray) -> np.ndarray:
    """Encode one message (length k) or a stack of messages (r x k)."""
    m = np.asarray(message, dtype=np.uint8)
    single = m.ndim == 1
    m = np.atleast_2d(m)
    if m.shape[1] != code.k:
        raise ParameterError(f"message length must be {code.k}")
    c = (m.astype(np.int64) @ code.generator.astype(np.int64)) & 1
    c = c.astype(np.uint8)
    return c[0] if single else c


def erasure_decode(code: ErasureCode, received: np.ndarray, erased: np.ndarray) -> np.ndarray:
    """Recover the message(s) from the unerased symbols.

    ``erased`` is a boolean mask of length n shared by all received words.
    Raises DecodeFailure when the unerased columns have rank below k.
    """
    r = np.asarray(received, dtype=np.uint8)
    single = r.ndim == 1
    r = np.atleast_2d(r)
    erased = np.asarray(erased, dtype=bool)
    if erased.shape != (code.n,) or r.shape[1] != code.n:
        raise ParameterError(f"received words and mask must have length {code.n}")
    keep = ~erased
    sol = gf2.solve(code.generator[:, keep].T, r[:, keep].T)
    if sol is None:
        raise DecodeFailure(f"{int(keep.sum())} unerased symbols do not determine {code.k} bits")
    out = sol.T.copy()
    return out[0] if single else out
