from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import VertexSet


@dataclass(frozen=True)
class EccentricityTable:
    """All eccentricities plus radius, diameter and center of a graph."""

    ecc: tuple[int, ...]
    rad: int
    diam: int
    center: VertexSet

    @classmethod
    def from_ecc(cls, ecc: Sequence[int]) -> EccentricityTable:
        ecc = tuple(int(e) for e in ecc)
        rad = min(ecc)
        return cls(ecc, rad, max(ecc), tuple(v for v, e in enumerate(ecc) if e == rad))

    def as_dict(self) -> dict:
        return {
            "rad": self.rad,
            "diam": self.diam,
            "ecc": list(self.ecc),
            "center": list(self.center),
        }
