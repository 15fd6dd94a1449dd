"""Closed-form sum-rate bounds for every CSI level and burstiness model.

All functions are pure and return sums over both users in bits per channel
use.  Shorthand used throughout::

    g = (n_d - n_c)^+ + max(n_d, n_c)      one-sided interference bound
    h = 2 max((n_d - n_c)^+, n_c)          two-sided interference bound

so the non-bursty sum capacity is min(2 n_d, g, h).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, ParameterError
from .ldm import ChannelConfig, Correlation, Region, classify_region

__all__ = [
    "Timing",
    "CSI",
    "Setting",
    "Kind",
    "RateBound",
    "OpportunisticRates",
    "StatePmf",
    "SETTINGS",
    "nonbursty_sum_capacity",
    "qs_worst_case_capacity",
    "qs_opportunistic",
    "in_opportunistic_region",
    "ergodic_converse",
    "ergodic_achievable",
    "named_corner",
    "average_sum_capacity",
    "feedback_capacity",
    "generalized_global_converse",
    "cooperative_bound",
    "state_split_bound",
    "is_tight",
]


class Timing(str, enum.Enum):
    QUASI_STATIC = "qs"
    ERGODIC = "ergodic"


class CSI(str, enum.Enum):
    LOCAL_CSIR = "csir"
    LOCAL_CSIRT = "csirt"
    GLOBAL_CSIRT = "global"


@dataclass(frozen=True)
class Setting:
    timing: Timing
    csi: CSI

    def __str__(self) -> str:
        return f"{self.timing.value}/{self.csi.value}"


SETTINGS = tuple(Setting(t, c) for t in Timing for c in CSI)


class Kind(str, enum.Enum):
    CONVERSE = "converse"
    ACHIEVABLE = "achievable"
    EXACT = "exact"


@dataclass(frozen=True)
class RateBound:
    value: float
    kind: Kind
    source: str

    def __post_init__(self) -> None:
        if not self.value >= -1e-12:
            raise ParameterError(f"negative rate {self.value}")
        object.__setattr__(self, "value", max(float(self.value), 0.0))


STATE_LABELS = ("00", "01", "10", "11")


@dataclass(frozen=True)
class OpportunisticRates:
    R: float
    deltas: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.deltas.get("11", 0.0) != 0.0:
            raise ParameterError("the fully interfered state carries no opportunistic rate")
        if any(v < 0 for v in self.deltas.values()):
            raise ParameterError("opportunistic rates must be nonnegative")

    def total(self, state: str) -> float:
        return self.R + self.deltas.get(state, 0.0)


@dataclass(frozen=True)
class StatePmf:
    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self) -> None:
        vals = (self.p00, self.p01, self.p10, self.p11)
        if any(not 0.0 <= v <= 1.0 for v in vals) or abs(sum(vals) - 1.0) > 1e-12:
            raise DomainError(f"invalid joint state pmf {vals}")

    @classmethod
    def independent(cls, p: float) -> "StatePmf":
        return cls((1 - p) ** 2, (1 - p) * p, p * (1 - p), p * p)

    @classmethod
    def fully_correlated(cls, p: float) -> "StatePmf":
        return cls(1 - p, 0.0, 0.0, p)


def _g(nd: int, nc: int) -> float:
    return max(nd - nc, 0) + max(nd, nc)


def _h(nd: int, nc: int) -> float:
    return 2 * max(max(nd - nc, 0), nc)


def _region(cfg: ChannelConfig) -> Region:
    return classify_region(cfg)


def nonbursty_sum_capacity(n_d: int, n_c: int) -> RateBound:
    if n_d < 0 or n_c < 0:
        raise ParameterError("gains must be nonnegative")
    return RateBound(min(2 * n_d, _g(n_d, n_c), _h(n_d, n_c)), Kind.EXACT, "nonbursty-capacity")


def qs_worst_case_capacity(cfg: ChannelConfig) -> RateBound:
    """Largest rate decodable in every interference state.

    The trivial 2 n_d bound is kept for p > 0 as well, which only matters
    when n_c > 2 n_d.
    """
    nd, nc = cfg.n_d, cfg.n_c
    if cfg.p == 0:
        return RateBound(2 * nd, Kind.EXACT, "qs-worst-case")
    return RateBound(min(2 * nd, _g(nd, nc), _h(nd, nc)), Kind.EXACT, "qs-worst-case")


def _effective_csi(cfg: ChannelConfig, setting: Setting) -> CSI:
    # With B1 = B2 each transmitter's own state is the global state.
    if setting.csi is CSI.LOCAL_CSIRT and cfg.correlation is Correlation.FULLY_CORRELATED:
        return CSI.GLOBAL_CSIRT
    return setting.csi


def qs_opportunistic(cfg: ChannelConfig, setting: Setting) -> OpportunisticRates:
    """Opportunistic rates at the corner that maximizes the worst-case rate."""
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    csi = _effective_csi(cfg, setting)
    correlated = cfg.correlation is Correlation.FULLY_CORRELATED
    R = qs_worst_case_capacity(cfg).value
    if csi is CSI.GLOBAL_CSIRT and correlated:
        if not 0 <= p < 1:
            raise DomainError("opportunistic rates with correlated states need 0 <= p < 1")
        return OpportunisticRates(R, {"00": 2 * nd - R, "11": 0.0})
    if not 0 < p < 1:
        raise DomainError("opportunistic rates need 0 < p < 1")
    region = _region(cfg)
    if region is Region.VWI:
        one = nc
    elif region is Region.WI:
        one = 2 * nd - 3 * nc
    else:
        one = 0
    if csi is CSI.GLOBAL_CSIRT:
        both = 2 * nd - R
    else:
        both = 2 * one
    return OpportunisticRates(R, {"00": both, "01": one, "10": one, "11": 0.0})


def in_opportunistic_region(cfg: ChannelConfig, setting: Setting, R: float,
                            deltas: Mapping[str, float], tol: float = 1e-9) -> bool:
    """Membership test for the full opportunistic inequality system.

    For local CSI ``deltas`` holds per-user rates under keys "1" and "2"
    (the rate of user i when its own link is clean).  For global CSI it holds
    the sum rates per joint state, keyed "00", "01", "10".
    """
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    g, h = _g(nd, nc), _h(nd, nc)
    vals = [R] + list(deltas.values())
    if any(v < -tol for v in vals):
        return False
    if R > 2 * nd + tol:
        return False
    if p > 0 and (R > g + tol or R > h + tol):
        return False
    csi = _effective_csi(cfg, setting)
    if csi is CSI.GLOBAL_CSIRT:
        if R + deltas.get("00", 0.0) > 2 * nd + tol:
            return False
        if cfg.correlation is Correlation.FULLY_CORRELATED:
            return all(deltas.get(k, 0.0) <= tol for k in ("01", "10"))
        return all(R + deltas.get(k, 0.0) <= g + tol for k in ("01", "10"))
    d1, d2 = deltas.get("1", 0.0), deltas.get("2", 0.0)
    return R + d1 + d2 <= 2 * nd + tol and R + d1 <= g + tol and R + d2 <= g + tol


def cooperative_bound(cfg: ChannelConfig) -> float:
    """Converse obtained by letting one receiver help the other."""
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    return 2 * (1 - p) / (1 + p) * nd + 2 * p / (1 + p) * _g(nd, nc)


def state_split_bound(cfg: ChannelConfig) -> float:
    """Converse for local CSIR obtained by splitting on the interference state."""
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    g, h = _g(nd, nc), _h(nd, nc)
    if p <= 0.5:
        return 2 * (1 - 2 * p) * nd + 2 * p * g
    return 2 * (1 - p) * g + (2 * p - 1) * h


def _global_ind_converse(cfg: ChannelConfig) -> tuple[float, str]:
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    g, h = _g(nd, nc), _h(nd, nc)
    marginal = 2 * (1 - p) * nd + p * g
    paired = 2 * (p * (1 - p) * g + (1 - p) ** 2 * nd + p * p * h / 2)
    if paired <= marginal:
        return paired, "global-converse-paired"
    return marginal, "global-converse-marginal"


def _global_corr_converse(cfg: ChannelConfig) -> tuple[float, str]:
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    g, h = _g(nd, nc), _h(nd, nc)
    marginal = 2 * (1 - p) * nd + p * g
    common = 2 * ((1 - p) * nd + p * h / 2)
    if common <= marginal:
        return common, "global-corr-converse-common"
    return marginal, "global-corr-converse-marginal"


def is_tight(cfg: ChannelConfig, setting: Setting) -> bool:
    """Whether the catalog knows capacity exactly for this ergodic point."""
    region = _region(cfg)
    if region is Region.VSI:
        return True
    csi = _effective_csi(cfg, setting)
    correlated = cfg.correlation is Correlation.FULLY_CORRELATED
    if csi is CSI.LOCAL_CSIR:
        return region in (Region.VWI, Region.WI) or cfg.p <= 0.5
    if csi is CSI.LOCAL_CSIRT:
        return region is Region.VWI
    if correlated:
        return True
    return region in (Region.VWI, Region.WI)


def ergodic_converse(cfg: ChannelConfig, setting: Setting) -> RateBound:
    """Upper bound on the ergodic sum capacity."""
    nd = cfg.n_d
    kind = Kind.EXACT if is_tight(cfg, setting) else Kind.CONVERSE
    if _region(cfg) is Region.VSI:
        return RateBound(2 * nd, Kind.EXACT, "vsi-parallel")
    csi = _effective_csi(cfg, setting)
    correlated = cfg.correlation is Correlation.FULLY_CORRELATED
    if csi is CSI.GLOBAL_CSIRT:
        v, src = _global_corr_converse(cfg) if correlated else _global_ind_converse(cfg)
        return RateBound(v, kind, src)
    coop = cooperative_bound(cfg)
    if csi is CSI.LOCAL_CSIRT:
        # The state-split bound does not survive transmitter adaptation, but
        # every global-CSIRT converse does.
        v, src = _global_ind_converse(cfg)
        if coop < v:
            v, src = coop, "csir-converse-cooperative"
        return RateBound(v, kind, src)
    split = state_split_bound(cfg)
    if coop < split:
        return RateBound(coop, kind, "csir-converse-cooperative")
    return RateBound(split, kind, "csir-converse-state-split")


def _csir_achievable(cfg: ChannelConfig) -> float:
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    g, h = _g(nd, nc), _h(nd, nc)
    if p <= 0.5:
        return 2 * (1 - 2 * p) * nd + 2 * p * g
    return min(g, 2 * (1 - p) * g + (2 * p - 1) * h)


def _pmin(p: float) -> float:
    return min(p * p, p * (1 - p))


def _global_ind_achievable(cfg: ChannelConfig) -> tuple[float, str]:
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    region = _region(cfg)
    pm = _pmin(p)
    if region in (Region.VWI, Region.WI):
        v = 2 * (p * (1 - p) * (2 * nd - nc) + (1 - p) ** 2 * nd + p * p * _h(nd, nc) / 2)
        return v, "global-achievable-ic-uncoded"
    if region is Region.MI:
        v = 4 * nd * pm + 2 * nd * (1 - p) ** 2 + (2 * nd - nc) * (2 * p - p * p - 3 * pm)
        return v, "global-achievable-mi-copy"
    v = 2 * (nd + nc) * pm + 2 * nd * (1 - p) ** 2 + nc * (2 * p - p * p - 3 * pm)
    return v, "global-achievable-si-copy"


def _global_corr_achievable(cfg: ChannelConfig) -> tuple[float, str]:
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    if _region(cfg) in (Region.VWI, Region.WI):
        return 2 * ((1 - p) * nd + p * _h(nd, nc) / 2), "global-corr-achievable-weak"
    return 2 * (1 - p) * nd + p * _g(nd, nc), "global-corr-achievable-strong"


def ergodic_achievable(cfg: ChannelConfig, setting: Setting, budget: int | None = None) -> RateBound:
    """Lower bound on the ergodic sum capacity.

    For local CSIRT with independent states the numerically optimized
    adaptive rate is compared against the CSIR scheme and the larger one is
    returned; ``budget`` caps the optimizer's objective evaluations.
    """
    nd = cfg.n_d
    kind = Kind.EXACT if is_tight(cfg, setting) else Kind.ACHIEVABLE
    region = _region(cfg)
    if region is Region.VSI:
        return RateBound(2 * nd, Kind.EXACT, "vsi-parallel")
    csi = _effective_csi(cfg, setting)
    correlated = cfg.correlation is Correlation.FULLY_CORRELATED
    if csi is CSI.GLOBAL_CSIRT:
        v, src = _global_corr_achievable(cfg) if correlated else _global_ind_achievable(cfg)
        return RateBound(v, kind, src)
    base = _csir_achievable(cfg)
    if csi is CSI.LOCAL_CSIR or region is Region.VWI:
        return RateBound(base, kind, "csir-achievable-erasure")
    from .csirt.optimize import DEFAULT_ACHIEVABLE_BUDGET, optimize_csirt

    res = optimize_csirt(cfg, budget=DEFAULT_ACHIEVABLE_BUDGET if budget is None else budget)
    if res.sum_rate > base:
        return RateBound(res.sum_rate, kind, "csirt-achievable-optimized")
    return RateBound(base, kind, "csir-achievable-erasure")


_CORNER_REGION = {"C_LMI": Region.MI, "C_GMI": Region.MI, "C_LSI": Region.SI, "C_GSI": Region.SI}


def named_corner(cfg: ChannelConfig, name: str) -> float:
    """Named min-of-two converse expressions for the MI and SI regions."""
    if name not in _CORNER_REGION:
        raise DomainError(f"unknown corner {name!r}")
    if _region(cfg) is not _CORNER_REGION[name]:
        raise DomainError(f"{name} is defined only in the {_CORNER_REGION[name].value} region")
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    if name == "C_LMI":
        return min(2 * (2 * (nd - nc) + p * (3 * nc - 2 * nd)),
                   2 * ((1 - p) / (1 + p) * nd + p / (1 + p) * (2 * nd - nc)))
    if name == "C_LSI":
        return min(2 * p * nc, 2 * ((1 - p) / (1 + p) * nd + p / (1 + p) * nc))
    if name == "C_GMI":
        a = nc / nd
        return min(2 * nd - p * nc, 2 * nd * ((1 - p * p) - (1 - 2 * p) * a * p))
    return min(nc * p + 2 * (1 - p) * nd, 2 * nd * (1 - p) ** 2 + 2 * nc * p)


def average_sum_capacity(cfg: ChannelConfig, setting: Setting) -> RateBound:
    """Average over independent quasi-static uses of worst-case plus opportunistic rate."""
    if setting.timing is not Timing.QUASI_STATIC:
        raise DomainError("the average sum capacity is a quasi-static quantity")
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    region = _region(cfg)
    if region is Region.VSI:
        return RateBound(2 * nd, Kind.EXACT, "vsi-parallel")
    csi = _effective_csi(cfg, setting)
    correlated = cfg.correlation is Correlation.FULLY_CORRELATED
    if csi is CSI.GLOBAL_CSIRT and correlated:
        table = {
            Region.VWI: 2 * (nd - p * nc),
            Region.WI: 2 * ((1 - p) * nd + p * nc),
            Region.MI: 2 * (1 - p) * nd + p * (2 * nd - nc),
            Region.SI: 2 * (1 - p) * nd + p * nc,
        }
        return RateBound(table[region], Kind.EXACT, "average-global-corr")
    if csi is CSI.GLOBAL_CSIRT:
        table = {
            Region.VWI: 2 * (nd - p * nc),
            Region.WI: 2 * ((1 - p * p) * nd + (2 * p - 1) * p * nc),
            Region.MI: 2 * nd - p * nc * (2 - p),
            Region.SI: 2 * nd * (1 - p) ** 2 + p * nc * (2 - p),
        }
        return RateBound(table[region], Kind.EXACT, "average-global-ind")
    if region is Region.VWI or p <= 0.5 and region in (Region.WI, Region.MI):
        v = 2 * (nd - p * nc)
    elif region is Region.WI:
        v = 4 * (nd - nc) + 2 * p * (3 * nc - 2 * nd)
    elif region is Region.MI:
        v = 2 * nd - nc
    elif p <= 0.5:
        v = 2 * (1 - 2 * p) * nd + 2 * p * nc
    else:
        v = nc
    return RateBound(v, Kind.EXACT, "average-local")


def feedback_capacity(cfg: ChannelConfig) -> RateBound:
    """Sum capacity with noiseless delayed output feedback and B1 = B2."""
    if cfg.correlation is not Correlation.FULLY_CORRELATED:
        raise DomainError("the feedback capacity formula assumes fully correlated states")
    nd, nc, p = cfg.n_d, cfg.n_c, cfg.p
    region = _region(cfg)
    if region in (Region.VWI, Region.WI, Region.MI):
        v = 2 * nd - 2 * p / (1 + p) * nc
    elif region is Region.SI:
        v = 2 * (1 - p) / (1 + p) * nd + 2 * p / (1 + p) * nc
    else:
        v = 2 * (1 - p) * nd + p * nc
    return RateBound(v, Kind.EXACT, "feedback-capacity")


def generalized_global_converse(n_d: int, n_c: int, pmf: StatePmf) -> RateBound:
    """Global-CSIRT converse for an arbitrary joint state distribution."""
    if not isinstance(pmf, StatePmf):
        raise DomainError("pmf must be a StatePmf")
    g, h = _g(n_d, n_c), _h(n_d, n_c)
    a, b, c, d = pmf.p00, pmf.p01, pmf.p10, pmf.p11
    v = min(
        2 * (a + b) * n_d + (c + d) * g,
        2 * (a + c) * n_d + (b + d) * g,
        (b + c) * g + 2 * (a * n_d + d * h / 2),
        2 * n_d,
    )
    return RateBound(v, Kind.CONVERSE, "global-converse-general-pmf")
