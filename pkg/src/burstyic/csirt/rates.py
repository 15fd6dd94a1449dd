"""Closed-form local-CSIRT achievable rates for every subregion.

The per-user expressions are written once against generic entropy callables
so that the same code evaluates scalars (``math``) and parameter grids
(``numpy``).  ``own`` holds the evaluated user's parameters and ``other`` the
interferer's, both keyed by the user-1 names of ``params.USER_LOW/USER_HIGH``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError, ParameterError
from ..ldm import ChannelConfig, Region, classify_region
from .entropy import h_b, h_b_array, h_sum, h_sum_array
from .params import CsirtParams, Subregion, check_subregion

__all__ = ["RatePair", "VARIANTS", "user_rate", "csirt_rate_pair", "vwi_sum_rate"]

VARIANTS = ("corrected", "printed")


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    @property
    def total(self) -> float:
        return self.r1 + self.r2


def user_rate(sub, nd, nc, p, own, other, hb=h_b_array, hs=h_sum_array,
              variant="corrected", second=False):
    """Rate of the user whose parameters are ``own``.

    ``second`` marks evaluation for user 2; it only matters for the printed
    variant of SI_a, whose two rate expressions are not mirror images.
    """
    s, t = nd - nc, nc - nd
    p1, p2 = own.get("p1"), own.get("p2")
    eta1, etap = own.get("eta1"), own.get("etap")
    q1, q2 = other.get("p1"), other.get("p2")
    g1, gp = other.get("eta1"), other.get("etap")
    q3 = (1 - p) * q1 + p * q2 if q1 is not None else None
    p3 = (1 - p) * p1 + p * p2 if p1 is not None else None
    gt = p + g1 * (1 - p) if g1 is not None else None

    if sub is Subregion.WI:
        return s + (1 - p) * (s + (2 * nc - nd) * hb(p1)) + p * (2 * nc - nd) * (1 - hb(q3))

    if sub in (Subregion.MI_a, Subregion.MI_b):
        pt1, pt2, ph1 = own["pt1"], own["pt2"], own["ph1"]
        qt3 = (1 - p) * other["pt1"] + p * other["pt2"]
        qh3 = (1 - p) * other["ph1"]
        w1 = (3 * nc - 2 * nd) / 2
        w2 = (4 * nd - 5 * nc) / 2
        clean = (1 - p) * (w1 * (hb(eta1) + hb(ph1) + hb(p1)) + w2 * hb(pt1) + s)
        if sub is Subregion.MI_a:
            hit = p * (w1 * (1 + hs(p2, gt) - hb(gt) + hs(pt2, q3) - hb(q3) - hb(qh3))
                       + w2 * (1 - hb(qt3)))
        else:
            hit = p * (w1 * (hs(p2, gt) - hb(gt) + 1 - hb(qh3))
                       + w2 * (hs(pt2, q3) - hb(q3) + 1 - hb(qt3)))
        return s + clean + hit

    if sub is Subregion.MI_c:
        ph1 = own["ph1"]
        qh3 = (1 - p) * other["ph1"]
        a = (5 * nc - 4 * nd) / 2
        b = (6 * nd - 7 * nc) / 2
        x = etap * (1 - gt) + (1 - etap) * gt
        return (s + (1 - p) * (a * (1 + hb(etap)) + s * (1 + hb(p1) + hb(eta1) + hb(ph1)))
                + p * (a * (1 - hb(gt) + hs(p2, gp) - hb(gp) + hs(x, q3) - hb(q3))
                       + b * (hs(p2, gt) - hb(gt)) + s * (1 - hb(qh3))))

    if sub is Subregion.MI_d:
        ph1 = own["ph1"]
        qh3 = (1 - p) * other["ph1"]
        x = etap * (1 - gt) + (1 - etap) * gt
        return (s + (1 - p) * ((6 * nc - 5 * nd) * hb(p1) + s * (2 + hb(eta1) + hb(etap) + hb(ph1)))
                + p * (s * (2 - hb(gt) - hb(qh3) + hs(x, q3) - hb(q3))
                       + s * (hs(p2, gp) - hb(gp))
                       + (7 * nc - 6 * nd) * (hs(p2, q3) - hb(q3))))

    if sub is Subregion.SI_a:
        x = etap * (1 - gt) + (1 - etap) * gt
        if variant == "printed" and second:
            # as printed, the entropy term mixes the own and the interferer's averages
            tail = hs(x, p3) - hb(q3)
        else:
            tail = hs(x, q3) - hb(q3)
        return (t + (1 - p) * ((5 * nd - 4 * nc) * hb(p1) + t * (1 + hb(eta1) + hb(etap)))
                + p * (t * (1 - hb(gt) + tail) + t * (hs(p2, gp) - hb(gp))
                       + (6 * nd - 5 * nc) * (hs(p2, q3) - hb(q3))))

    if sub is Subregion.SI_b:
        a = 2 * nd - 1.5 * nc
        if variant == "printed":
            return (a + (1 - p) * (a * hb(eta1) + 2 * t + (3 * nd - 2 * nc) * hb(p1))
                    + p * (t * (1 - hb(q3)) + a * (1 - hb(gt)) + (2.5 * nc - 3 * nd)))
        h = 2.5 * nc - 3 * nd
        return (t + (1 - p) * (h + a * hb(eta1) + (3 * nd - 2 * nc) * hb(p1))
                + p * (h * (1 - hb(q3)) + (4 * nd - 3 * nc) * (hs(p2, q3) - hb(q3))
                       + a * (hs(p2, gt) - hb(gt))))

    if sub is Subregion.SI_c:
        lead = nd - nc / 2 if variant == "printed" else t
        return (lead + (1 - p) * ((3 * nd - 2 * nc) * (1 + hb(p1)) + (1.5 * nc - 2 * nd) * (1 + hb(eta1)))
                + p * ((3 * nd - 2 * nc) * (1 - hb(q3)) + (1.5 * nc - 2 * nd) * (1 - hb(gt))))

    if sub is Subregion.SI_d:
        u = nd - nc / 2
        return t + (1 - p) * u * (1 + hb(eta1)) + p * u * (1 - hb(gt))

    raise DomainError(f"unknown subregion {sub!r}")


def vwi_sum_rate(cfg: ChannelConfig) -> float:
    """Parameter-free sum rate in very weak interference."""
    if classify_region(cfg) is not Region.VWI:
        raise DomainError("the parameter-free rate applies only to very weak interference")
    return 2 * (cfg.n_d - cfg.p * cfg.n_c)


def csirt_rate_pair(cfg: ChannelConfig, params: CsirtParams, variant: str = "corrected") -> RatePair:
    """Per-user achievable rates of the adaptive scheme for one subregion."""
    if variant not in VARIANTS:
        raise ParameterError(f"variant must be one of {VARIANTS}")
    check_subregion(cfg, params.subregion)
    u1, u2 = params.users()
    args = (params.subregion, cfg.n_d, cfg.n_c, cfg.p)
    r1 = user_rate(*args, u1, u2, h_b, h_sum, variant)
    r2 = user_rate(*args, u2, u1, h_b, h_sum, variant, second=True)
    return RatePair(float(r1), float(r2))
