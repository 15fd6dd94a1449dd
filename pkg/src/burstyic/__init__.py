"""Bounds, optimizers and simulators for the bursty linear deterministic interference channel."""

from .errors import BurstyICError, ConfigurationError, DomainError, ParameterError
from .ldm import (
    ChannelConfig,
    Correlation,
    Region,
    StateSequence,
    channel_output,
    classify_region,
    down_shift,
    lowest_select,
    sample_states,
)

__version__ = "0.1.0"

__all__ = [
    "BurstyICError",
    "ConfigurationError",
    "DomainError",
    "ParameterError",
    "ChannelConfig",
    "Correlation",
    "Region",
    "StateSequence",
    "channel_output",
    "classify_region",
    "down_shift",
    "lowest_select",
    "sample_states",
]
