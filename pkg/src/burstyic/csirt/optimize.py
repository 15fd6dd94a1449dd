"""Numerical maximization of the local-CSIRT sum rate over the parameter box."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..ldm import ChannelConfig, Region, classify_region
from .entropy import h_b, h_b_array, h_sum, h_sum_array
from .params import USER_HIGH, USER_LOW, CsirtParams, Subregion, subregions_for
from .rates import user_rate

__all__ = ["OptimizeResult", "optimize_csirt", "sum_rate_vector", "DEFAULT_ACHIEVABLE_BUDGET"]

DEFAULT_ACHIEVABLE_BUDGET = 1500
GRID_POINTS = 9
TOL = 1e-7
_INVPHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class OptimizeResult:
    params: CsirtParams
    sum_rate: float
    evaluations: int
    symmetric: bool


class _Objective:
    """Vectorized sum rate with an evaluation counter."""

    def __init__(self, cfg: ChannelConfig, sub: Subregion, symmetric: bool):
        self.cfg, self.sub, self.symmetric = cfg, sub, symmetric
        self.lk, self.hk = USER_LOW[sub], USER_HIGH[sub]
        d = len(self.lk) + len(self.hk)
        self.dim = d if symmetric else 2 * d
        self.lower = np.array(([0.0] * len(self.lk) + [0.5] * len(self.hk)) * (1 if symmetric else 2))
        self.upper = self.lower + 0.5
        self.count = 0

    def _users(self, X):
        d = len(self.lk) + len(self.hk)
        keys = self.lk + self.hk
        if isinstance(X, list):
            u1 = {k: X[i] for i, k in enumerate(keys)}
            u2 = u1 if self.symmetric else {k: X[d + i] for i, k in enumerate(keys)}
            return u1, u2
        u1 = {k: X[..., i] for i, k in enumerate(keys)}
        if self.symmetric:
            return u1, u1
        u2 = {k: X[..., d + i] for i, k in enumerate(keys)}
        return u1, u2

    def __call__(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        self.count += X.shape[0]
        c = self.cfg
        args = (self.sub, c.n_d, c.n_c, c.p)
        if X.shape[0] == 1:
            # scalar path: much cheaper than numpy for single points
            u1, u2 = self._users([float(v) for v in X[0]])
            r = user_rate(*args, u1, u2, h_b, h_sum)
            if not self.symmetric:
                return np.array([r + user_rate(*args, u2, u1, h_b, h_sum)])
            return np.array([2 * r])
        u1, u2 = self._users(X)
        r1 = user_rate(*args, u1, u2, h_b_array, h_sum_array)
        if self.symmetric:
            return 2 * np.asarray(r1, dtype=float) * np.ones(X.shape[0])
        r2 = user_rate(*args, u2, u1, h_b_array, h_sum_array)
        return np.asarray(r1 + r2, dtype=float) * np.ones(X.shape[0])

    def to_params(self, x) -> CsirtParams:
        d = len(self.lk) + len(self.hk)
        x = np.clip(np.asarray(x, dtype=float), self.lower, self.upper)
        full = np.concatenate([x, x]) if self.symmetric else x
        a, b = full[:d], full[d:]
        nl = len(self.lk)
        return CsirtParams(self.sub, tuple(a[:nl]) + tuple(b[:nl]), tuple(a[nl:]) + tuple(b[nl:]))


def _coarse(obj: _Objective, budget: int):
    axes = [np.linspace(lo, hi, GRID_POINTS) for lo, hi in zip(obj.lower, obj.upper)]
    if GRID_POINTS ** obj.dim <= budget:
        X = np.array(list(itertools.product(*axes)))
        vals = obj(X)
        i = int(np.argmax(vals))
        return X[i].copy(), float(vals[i])
    # cyclic coordinate scans from the centre point
    x = np.array([0.5] * obj.dim)
    best = float(obj(x)[0])
    while obj.count + GRID_POINTS <= budget:
        improved = False
        for k in range(obj.dim):
            if obj.count + GRID_POINTS > budget:
                break
            X = np.repeat(x[None, :], GRID_POINTS, axis=0)
            X[:, k] = axes[k]
            vals = obj(X)
            i = int(np.argmax(vals))
            if vals[i] > best + 1e-15:
                best, x = float(vals[i]), X[i].copy()
                improved = True
        if not improved:
            break
    return x, best


def _golden(obj: _Objective, x, best, budget: int):
    """Coordinate-wise golden-section refinement; keeps the best point seen."""
    x = x.copy()
    while obj.count < budget:
        start = best
        for k in range(obj.dim):
            a, b = obj.lower[k], obj.upper[k]
            c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)

            def f(v):
                y = x.copy()
                y[k] = v
                return float(obj(y)[0])

            if obj.count + 2 > budget:
                break
            fc, fd = f(c), f(d)
            while b - a > 1e-9 and obj.count < budget:
                if fc >= fd:
                    b, d, fd = d, c, fc
                    c = b - _INVPHI * (b - a)
                    fc = f(c)
                else:
                    a, c, fc = c, d, fd
                    d = a + _INVPHI * (b - a)
                    fd = f(d)
            v, fv = (c, fc) if fc >= fd else (d, fd)
            if fv > best:
                best = fv
                x[k] = v
        if best - start < TOL:
            break
    return x, best


def _on_boundary(obj: _Objective, x) -> bool:
    return bool(np.any(np.isclose(x, obj.lower, atol=1e-6) | np.isclose(x, obj.upper, atol=1e-6)))


def _optimize_sub(cfg: ChannelConfig, sub: Subregion, budget: int) -> OptimizeResult:
    sym = _Objective(cfg, sub, True)
    x, best = _coarse(sym, budget // 2)
    x, best = _golden(sym, x, best, budget if cfg.n_c != cfg.n_d else (3 * budget) // 4)
    used = sym.count
    result = OptimizeResult(sym.to_params(x), best, used, True)
    if used < budget and (cfg.n_c == cfg.n_d or _on_boundary(sym, x)):
        asym = _Objective(cfg, sub, False)
        y = np.concatenate([x, x])
        start = float(asym(y)[0])
        y, val = _golden(asym, y, start, budget - used)
        used += asym.count
        if val > best + 1e-12:
            result = OptimizeResult(asym.to_params(y), val, used, False)
        else:
            result = OptimizeResult(result.params, best, used, True)
    return result


def optimize_csirt(cfg: ChannelConfig, budget: int = 100_000) -> OptimizeResult:
    """Best sum rate found within ``budget`` objective evaluations.

    At an alpha shared by two subregions both are optimized, each with half
    the budget, and the better result is returned.
    """
    region = classify_region(cfg)
    if region in (Region.VWI, Region.VSI):
        raise DomainError("no free parameters")
    if budget < 2 * GRID_POINTS:
        raise DomainError(f"budget {budget} is too small")
    subs = subregions_for(cfg)
    per = budget // len(subs)
    best = None
    total = 0
    for sub in subs:
        res = _optimize_sub(cfg, sub, per)
        total += res.evaluations
        if best is None or res.sum_rate > best.sum_rate + 1e-12:
            best = res
    return OptimizeResult(best.params, best.sum_rate, total, best.symmetric)


def sum_rate_vector(cfg: ChannelConfig, params: CsirtParams) -> float:
    """Sum rate of a parameter point using the vectorized objective."""
    u1, u2 = params.users()
    args = (params.subregion, cfg.n_d, cfg.n_c, cfg.p)
    return float(user_rate(*args, u1, u2, h_b_array, h_sum_array)
                 + user_rate(*args, u2, u1, h_b_array, h_sum_array))
