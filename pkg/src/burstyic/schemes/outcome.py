"""Result record shared by all simulators."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvariantViolation

__all__ = ["SimOutcome"]


@dataclass(frozen=True)
class SimOutcome:
    scheme: str
    decoded_ok: bool
    bits_delivered: tuple[int, int]
    channel_uses: int
    state_counts: dict
    target: float
    decode_failures: int = 0
    bit_errors: int = 0
    realized_target: float | None = None
    transcript: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.channel_uses <= 0:
            raise InvariantViolation("a simulation must use the channel at least once")
        if set(self.state_counts) != {"00", "01", "10", "11"}:
            raise InvariantViolation("state counts must cover all four joint states")

    @property
    def K(self) -> int:
        return sum(self.state_counts.values())

    @property
    def empirical_sum_rate(self) -> float:
        return sum(self.bits_delivered) / self.channel_uses

    @property
    def per_user_rate(self) -> tuple[float, float]:
        return tuple(b / self.channel_uses for b in self.bits_delivered)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "decoded_ok": self.decoded_ok,
            "bits_delivered": list(self.bits_delivered),
            "channel_uses": self.channel_uses,
            "empirical_sum_rate": self.empirical_sum_rate,
            "state_counts": {k: self.state_counts[k] for k in sorted(self.state_counts)},
            "target": self.target,
            "realized_target": self.realized_target,
            "decode_failures": self.decode_failures,
            "bit_errors": self.bit_errors,
        }
