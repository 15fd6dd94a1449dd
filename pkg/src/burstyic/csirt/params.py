"""Subregions of the local-CSIRT schemes and their free parameters.

Each subregion has a fixed list of per-user parameters.  A parameter vector
stores user 1's block first and user 2's block second; in formulas user 2's
copies appear under the names q_*, gamma_* from user 1's point of view.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DomainError, ParameterError
from ..ldm import ChannelConfig

__all__ = [
    "Subregion",
    "INTERVALS",
    "USER_LOW",
    "USER_HIGH",
    "CsirtParams",
    "subregions_for",
    "param_names",
]


class Subregion(str, enum.Enum):
    WI = "WI"
    MI_a = "MI_a"
    MI_b = "MI_b"
    MI_c = "MI_c"
    MI_d = "MI_d"
    SI_a = "SI_a"
    SI_b = "SI_b"
    SI_c = "SI_c"
    SI_d = "SI_d"


F = Fraction
# Closed alpha intervals; the WI lower end is open.
INTERVALS: dict[Subregion, tuple[Fraction, Fraction]] = {
    Subregion.WI: (F(1, 2), F(2, 3)),
    Subregion.MI_a: (F(2, 3), F(3, 4)),
    Subregion.MI_b: (F(3, 4), F(4, 5)),
    Subregion.MI_c: (F(4, 5), F(6, 7)),
    Subregion.MI_d: (F(6, 7), F(1)),
    Subregion.SI_a: (F(1), F(6, 5)),
    Subregion.SI_b: (F(6, 5), F(4, 3)),
    Subregion.SI_c: (F(4, 3), F(3, 2)),
    Subregion.SI_d: (F(3, 2), F(2)),
}

# per-user parameter names; "pt"/"ph" are the tilde and hat variants, "etap" is eta'
USER_LOW: dict[Subregion, tuple[str, ...]] = {
    Subregion.WI: ("p1", "p2"),
    Subregion.MI_a: ("p1", "p2", "pt1", "pt2", "ph1"),
    Subregion.MI_b: ("p1", "p2", "pt1", "pt2", "ph1"),
    Subregion.MI_c: ("p1", "p2", "ph1"),
    Subregion.MI_d: ("p1", "p2", "ph1"),
    Subregion.SI_a: ("p1", "p2"),
    Subregion.SI_b: ("p1", "p2"),
    Subregion.SI_c: ("p1", "p2"),
    Subregion.SI_d: (),
}
USER_HIGH: dict[Subregion, tuple[str, ...]] = {
    Subregion.WI: (),
    Subregion.MI_a: ("eta1",),
    Subregion.MI_b: ("eta1",),
    Subregion.MI_c: ("eta1", "etap"),
    Subregion.MI_d: ("eta1", "etap"),
    Subregion.SI_a: ("eta1", "etap"),
    Subregion.SI_b: ("eta1",),
    Subregion.SI_c: ("eta1",),
    Subregion.SI_d: ("eta1",),
}


def param_names(sub: Subregion) -> tuple[list[str], list[str]]:
    """Display names of the low and high vectors, user 1 then user 2."""
    other = {"p1": "q1", "p2": "q2", "pt1": "qt1", "pt2": "qt2", "ph1": "qh1",
             "eta1": "gamma1", "etap": "gammap"}
    low = list(USER_LOW[sub]) + [other[k] for k in USER_LOW[sub]]
    high = list(USER_HIGH[sub]) + [other[k] for k in USER_HIGH[sub]]
    return low, high


@dataclass(frozen=True)
class CsirtParams:
    subregion: Subregion
    low: tuple[float, ...]
    high: tuple[float, ...]

    def __post_init__(self) -> None:
        sub = Subregion(self.subregion)
        low = tuple(float(v) for v in self.low)
        high = tuple(float(v) for v in self.high)
        if len(low) != 2 * len(USER_LOW[sub]) or len(high) != 2 * len(USER_HIGH[sub]):
            raise ParameterError(
                f"{sub.value} takes {2 * len(USER_LOW[sub])} low and "
                f"{2 * len(USER_HIGH[sub])} high parameters")
        if any(not 0.0 <= v <= 0.5 for v in low):
            raise ParameterError("low parameters must lie in [0, 1/2]")
        if any(not 0.5 <= v <= 1.0 for v in high):
            raise ParameterError("high parameters must lie in [1/2, 1]")
        object.__setattr__(self, "subregion", sub)
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "high", high)

    @classmethod
    def symmetric_point(cls, sub: Subregion) -> "CsirtParams":
        sub = Subregion(sub)
        return cls(sub, (0.5,) * (2 * len(USER_LOW[sub])), (0.5,) * (2 * len(USER_HIGH[sub])))

    @classmethod
    def from_users(cls, sub: Subregion, u1: dict, u2: dict) -> "CsirtParams":
        sub = Subregion(sub)
        low = [u1[k] for k in USER_LOW[sub]] + [u2[k] for k in USER_LOW[sub]]
        high = [u1[k] for k in USER_HIGH[sub]] + [u2[k] for k in USER_HIGH[sub]]
        return cls(sub, tuple(low), tuple(high))

    def users(self) -> tuple[dict, dict]:
        """Per-user parameter dicts keyed by the user-1 names."""
        lk, hk = USER_LOW[self.subregion], USER_HIGH[self.subregion]
        nl, nh = len(lk), len(hk)
        u1 = dict(zip(lk, self.low[:nl])) | dict(zip(hk, self.high[:nh]))
        u2 = dict(zip(lk, self.low[nl:])) | dict(zip(hk, self.high[nh:]))
        return u1, u2

    def swapped(self) -> "CsirtParams":
        u1, u2 = self.users()
        return CsirtParams.from_users(self.subregion, u2, u1)

    def as_vector(self) -> np.ndarray:
        return np.array(self.low + self.high)


def subregions_for(cfg: ChannelConfig) -> list[Subregion]:
    """Every subregion whose closed alpha interval contains n_c/n_d."""
    if cfg.n_d == 0:
        raise DomainError("alpha is undefined for n_d = 0")
    a = cfg.alpha_exact
    out = []
    for sub, (lo, hi) in INTERVALS.items():
        if sub is Subregion.WI and a == lo:
            continue
        if lo <= a <= hi:
            out.append(sub)
    return out


def check_subregion(cfg: ChannelConfig, sub: Subregion) -> None:
    if Subregion(sub) not in subregions_for(cfg):
        lo, hi = INTERVALS[Subregion(sub)]
        raise DomainError(f"alpha={cfg.alpha_exact} lies outside {Subregion(sub).value} [{lo}, {hi}]")
