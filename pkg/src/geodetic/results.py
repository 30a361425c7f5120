from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class SolveResult:
    """A verified minimum geodetic set.

    ``witness`` is sorted ascending; ``verified`` is always True on results
    returned by the solvers (the witness is re-checked before returning).
    """

    witness: tuple[int, ...]
    algorithm: str
    verified: bool
    stats: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.witness)


@dataclass(frozen=True)
class CapExceeded:
    """No geodetic set of size at most ``cap`` exists."""

    cap: int
    stats: dict[str, Any] = field(default_factory=dict, compare=False)
