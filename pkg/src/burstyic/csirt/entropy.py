"""Binary entropy helpers with the 0 log 0 = 0 convention."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError

__all__ = ["h_b", "h_sum", "h_b_array", "h_sum_array", "conv"]

_EPS = 1e-12


def _check(x: float, name: str) -> float:
    x = float(x)
    if not -_EPS <= x <= 1 + _EPS:
        raise DomainError(f"{name}={x} is not a probability")
    return min(max(x, 0.0), 1.0)


def h_b(x: float) -> float:
    """Binary entropy in bits."""
    x = _check(x, "x")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def conv(a, b):
    """Probability that the XOR of independent Bernoulli(a) and Bernoulli(b) is one."""
    return a * (1 - b) + (1 - a) * b


def h_sum(a: float, b: float) -> float:
    return h_b(conv(_check(a, "a"), _check(b, "b")))


def h_b_array(x) -> np.ndarray:
    """Vectorized binary entropy; clips tiny rounding excursions."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -x * np.log2(x) - (1 - x) * np.log2(1 - x)
    return np.where((x <= 0) | (x >= 1), 0.0, out)


def h_sum_array(a, b) -> np.ndarray:
    return h_b_array(conv(np.asarray(a, dtype=float), np.asarray(b, dtype=float)))
