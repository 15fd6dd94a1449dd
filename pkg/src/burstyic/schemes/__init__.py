"""Bit-exact simulators of the achievability schemes."""

from .erasure import DecodeFailure, ErasureCode, erasure_decode, erasure_encode
from .globalcsi import GLOBAL_SCHEMES, run_scheme_global, states_from_counts
from .local import LOCAL_SCHEMES, run_scheme_local
from .outcome import SimOutcome
from .plan import CopiedFrom, Level, LevelPlan, Role
from .qs import QS_SCHEMES, run_scheme_qs

__all__ = [
    "DecodeFailure",
    "ErasureCode",
    "erasure_decode",
    "erasure_encode",
    "GLOBAL_SCHEMES",
    "run_scheme_global",
    "states_from_counts",
    "LOCAL_SCHEMES",
    "run_scheme_local",
    "SimOutcome",
    "CopiedFrom",
    "Level",
    "LevelPlan",
    "Role",
    "QS_SCHEMES",
    "run_scheme_qs",
]
