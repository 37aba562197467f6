"""Result record shared by the counting engines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CountRecord:
    """Outcome of one counting run.

    ``candidates_examined`` is the machine-independent work observable:
    every candidate probe the run performed, regardless of wall clock or
    worker count.  For enumeration methods the count never exceeds it;
    derived quantities (a power of an enumerated count, a closed-form
    progression count) may.  ``details`` carries method-specific extras
    such as the per-phase probe split of the fast counter.
    """

    method: str
    parameters: dict
    count: int
    candidates_examined: int
    elapsed_s: float
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.count < 0 or self.candidates_examined < 0:
            raise ValueError("count and candidates_examined must be nonnegative")

    @property
    def elapsed_ms(self) -> float:
        return self.elapsed_s * 1000.0
