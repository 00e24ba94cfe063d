"""Run configuration: keys, schedules, system parameters, pipeline constants."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cipher import DEFAULT_SHIFTS
from .lorenz import DEFAULT_ROTATIONS, LorenzParams, SecretKey


@dataclass(frozen=True)
class Config:
    """Everything the pipelines need besides the image itself."""

    key_strings: tuple[str, str, str]
    shifts: tuple[int, int, int] = DEFAULT_SHIFTS
    rotations: tuple[tuple[int, int, int], ...] = (DEFAULT_ROTATIONS,) * 3
    params: LorenzParams = field(default_factory=LorenzParams)
    t_start: float = 0.0
    t_end: float = 50.0
    dt: float = 0.001
    energy_fraction: float = 0.999

    def __post_init__(self):
        if len(self.key_strings) != 3:
            raise ValueError("exactly three keys are required")
        if len(self.rotations) != 3:
            raise ValueError("one rotation triple per key is required")
        if not 0.0 < self.energy_fraction <= 1.0:
            raise ValueError("energy fraction must be in (0, 1]")

    def keys(self) -> tuple[SecretKey, SecretKey, SecretKey]:
        return tuple(
            SecretKey(chars, rot) for chars, rot in zip(self.key_strings, self.rotations)
        )
