"""Local-CSIRT achievable rates: closed forms, exact oracle and optimizer."""

from .entropy import h_b, h_sum
from .oracle import mi_oracle
from .optimize import OptimizeResult, optimize_csirt
from .params import CsirtParams, Subregion, subregions_for
from .rates import RatePair, csirt_rate_pair, vwi_sum_rate

__all__ = [
    "h_b",
    "h_sum",
    "mi_oracle",
    "OptimizeResult",
    "optimize_csirt",
    "CsirtParams",
    "Subregion",
    "subregions_for",
    "RatePair",
    "csirt_rate_pair",
    "vwi_sum_rate",
]
