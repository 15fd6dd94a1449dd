"""Per-level roles of the transmitted signal."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import ConfigurationError, ParameterError
from ..ldm import ChannelConfig, Region, classify_region

__all__ = [
    "Level",
    "Role",
    "LevelPlan",
    "CopiedFrom",
    "qs_plan",
    "local_plan",
    "avoidance_rows",
    "interfered_rows",
]


class Level(str, enum.Enum):
    UNCODED = "uncoded"
    ERASURE = "erasure"
    ZERO = "zero"
    COPIED = "copied"


class Role(str, enum.Enum):
    WORST = "worst"
    OPPORTUNISTIC = "opportunistic"
    NONE = "none"


@dataclass(frozen=True)
class CopiedFrom:
    """Marks a level that repeats ``row`` of the signal sent in state class ``cls``."""

    cls: str
    row: int


@dataclass(frozen=True)
class LevelPlan:
    """Assignment of each of the q input levels; row 0 is most significant."""

    q: int
    levels: tuple
    roles: tuple

    def __post_init__(self) -> None:
        if len(self.levels) != self.q or len(self.roles) != self.q:
            raise ParameterError("a plan must assign every one of the q levels")
        for lv in self.levels:
            if isinstance(lv, CopiedFrom):
                if not 0 <= lv.row < self.q:
                    raise ParameterError(f"copy source row {lv.row} out of range")
            elif not isinstance(lv, Level):
                raise ParameterError(f"unknown level assignment {lv!r}")

    def rows(self, level: Level, role: Role | None = None) -> list[int]:
        return [i for i, (lv, ro) in enumerate(zip(self.levels, self.roles))
                if lv == level and (role is None or ro is role)]

    @classmethod
    def from_segments(cls, q: int, segments) -> "LevelPlan":
        """Build from (level, role, width) runs, padding the bottom with zeros."""
        levels, roles = [], []
        for level, role, width in segments:
            if width < 0:
                raise ConfigurationError("negative block width in level plan")
            levels += [level] * width
            roles += [role] * width
        if len(levels) > q:
            raise ConfigurationError("level plan is taller than the signal")
        pad = q - len(levels)
        return cls(q, tuple(levels + [Level.ZERO] * pad), tuple(roles + [Role.NONE] * pad))


U, E, Z = Level.UNCODED, Level.ERASURE, Level.ZERO
W, O, N = Role.WORST, Role.OPPORTUNISTIC, Role.NONE


def qs_plan(cfg: ChannelConfig, scheme: str) -> LevelPlan:
    """Level plans of the quasi-static opportunistic schemes."""
    region = classify_region(cfg)
    nd, nc = cfg.n_d, cfg.n_c
    s = nd - nc
    if scheme == "VWI_opportunistic":
        if region is not Region.VWI:
            raise ConfigurationError(f"{scheme} needs very weak interference, got {region.value}")
        return LevelPlan.from_segments(cfg.q, [(U, W, s), (U, O, nc)])
    if scheme == "WI_opportunistic":
        if region is not Region.WI:
            raise ConfigurationError(f"{scheme} needs weak interference, got {region.value}")
        return LevelPlan.from_segments(
            cfg.q, [(U, W, s), (Z, N, 2 * nc - nd), (U, O, 2 * nd - 3 * nc), (U, W, 2 * nc - nd)])
    raise ConfigurationError(f"unknown quasi-static scheme {scheme!r}")


def local_plan(cfg: ChannelConfig, scheme: str) -> LevelPlan:
    """Level plans of the local-CSIR ergodic schemes."""
    region = classify_region(cfg)
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    if scheme == "S1_vwi_wi_mi":
        ok = region is Region.VWI or (region in (Region.WI, Region.MI) and p <= 0.5)
        if not ok:
            raise ConfigurationError("S1 needs very weak interference, or n_c <= n_d with p <= 1/2")
        return LevelPlan.from_segments(cfg.q, [(U, N, nd - nc), (E, N, nc)])
    if scheme == "S2_wi_highp":
        if region is not Region.WI:
            raise ConfigurationError(f"S2 needs weak interference, got {region.value}")
        return LevelPlan.from_segments(
            cfg.q, [(U, N, nd - nc), (Z, N, 2 * nc - nd), (E, N, 2 * nd - 3 * nc), (U, N, 2 * nc - nd)])
    if scheme == "S3_si":
        if region is not Region.SI or p > 0.5:
            raise ConfigurationError("S3 needs strong interference with p <= 1/2")
        return LevelPlan.from_segments(cfg.q, [(E, N, 2 * nd - nc), (U, N, nc - nd)])
    raise ConfigurationError(f"unknown local scheme {scheme!r}")


def interfered_rows(cfg: ChannelConfig, active: int | None = None) -> set[int]:
    """Input levels of a user that collide with the interferer's image.

    ``active`` limits the interferer to its top levels; by default all q
    levels may carry data.
    """
    nd, nc, q = cfg.n_d, cfg.n_c, cfg.q
    active = q if active is None else active
    own = {i: i + q - nd for i in range(nd)}
    image = {j + q - nc for j in range(min(nc, active))}
    return {i for i, r in own.items() if r in image}


def avoidance_rows(cfg: ChannelConfig) -> list[int]:
    """Data levels of a symmetric plan whose interference never hits data.

    The interferer's level i lands on the same output row as the own level
    i + u, where u = |n_d - n_c|; the plan keeps no two levels u apart by
    taking every other level along each residue chain.
    """
    nd, nc = cfg.n_d, cfg.n_c
    u = abs(nd - nc)
    if nc == 0 or u >= nd:
        return list(range(nd))
    if u == 0:
        return []
    rows = []
    for r in range(u):
        chain = list(range(r, nd, u))
        rows += chain[::2]
    return sorted(rows)
