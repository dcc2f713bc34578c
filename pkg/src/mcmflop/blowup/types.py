from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..polycore import Ideal, Poly


class BlowupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HypersurfaceSingularity:
    """V(f) in affine space, studied locally at the origin."""

    ambient_vars: tuple[str, ...]
    f: Poly
    local: bool = True  # False allows fibres that miss the origin (e.g. t = 1)

    def __post_init__(self):
        if self.f.ring != tuple(self.ambient_vars):
            raise BlowupError(f"f lives in {self.f.ring}, expected {self.ambient_vars}")
        if self.f.is_zero() or self.f.is_constant():
            raise BlowupError("f must be non-constant")
        if self.local and self.f.constant_term() != 0:
            raise BlowupError("the origin must lie on V(f)")

    @property
    def dim(self) -> int:
        return len(self.ambient_vars) - 1

    @classmethod
    def of(cls, f: Poly, local: bool = True) -> "HypersurfaceSingularity":
        return cls(f.ring, f, local)


@dataclass(frozen=True, eq=False)
class BlowupIdeal:
    gens: Ideal
    source: str  # "villamayor-minors" | "generic-sections" | "base-change" | ...
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def ring(self) -> tuple[str, ...]:
        return self.gens.ring

    def generators(self) -> list[Poly]:
        return self.gens.nonzero_gens()

    def __repr__(self) -> str:
        return f"BlowupIdeal({', '.join(str(g) for g in self.generators())}; {self.source})"


@dataclass(frozen=True, eq=False)
class ChartModel:
    """A chart re-embedded after eliminating variables that occur linearly.

    ``coords`` expresses every ambient chart variable as a polynomial in
    ``vars``; ``ideal`` cuts out the chart in the smaller affine space.
    """

    vars: tuple[str, ...]
    ideal: Ideal
    coords: dict[str, Poly]


@dataclass(frozen=True, eq=False)
class BlowupChart:
    chart_index: int
    vars: tuple[str, ...]
    defining_ideal: Ideal
    exceptional_ideal: Ideal
    original_vars: tuple[str, ...]
    ratio_vars: dict[int, str]  # generator index -> ratio variable g_j / g_i
    model: ChartModel
    empty: bool = False

    def __repr__(self) -> str:
        tag = " empty" if self.empty else ""
        return f"BlowupChart({self.chart_index}{tag}: {self.model.ideal} in {self.model.vars})"


@dataclass(frozen=True)
class SingularPoint:
    chart_index: int
    coordinates: dict[str, Any]  # ambient chart coordinates
    label: str  # ADE label, "not an RDP", or "unknown"
    tau: int | None = None


@dataclass(frozen=True)
class SingularityReport:
    singular_locus_dimension: int
    points_or_components: tuple[tuple[Ideal, str], ...]
    smooth: bool
    normal: str  # "normal" | "undetermined"
    complete_intersection: bool
    points: tuple[SingularPoint, ...] = ()
    irrational_points: int = 0

    def labels(self) -> list[str]:
        return [lab for _, lab in self.points_or_components]
