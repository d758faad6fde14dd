"""Grid search over coil geometry plus manufacturing design-rule checks."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .circuit import ChipModel, TuningSolution, synthesize_tuning
from .coil import CoilGeometry, Shape, SubstrateSpec, inductance_wheeler
from .errors import Untunable


class TargetMode(str, enum.Enum):
    INDUCTANCE = "inductance"
    RESONANCE = "resonance"


@dataclass(frozen=True)
class SynthesisTarget:
    mode: TargetMode
    target_value: float  # H or Hz
    chip: ChipModel = field(default_factory=ChipModel)
    tolerance: float = 0.05
    # capacitor rounding used to score resonance candidates
    snap: str = "exact"

    def __post_init__(self):
        object.__setattr__(self, "mode", TargetMode(self.mode))
        if self.target_value <= 0:
            raise ValueError("target_value must be positive")
        if not 0 < self.tolerance < 1:
            raise ValueError("tolerance must lie in (0, 1)")


@dataclass(frozen=True)
class DesignRules:
    """Etching limits in mm. Width and spacing grids run min..max in steps."""

    min_trace_width: float = 0.3
    min_spacing: float = 0.2
    max_outer_length: float = 300.0
    max_outer_width: float = 300.0
    max_turns: int = 12
    width_grid: float = 0.1
    spacing_grid: float = 0.1
    max_trace_width: float = 2.0
    max_spacing: float = 3.0

    def __post_init__(self):
        for name in ("min_trace_width", "min_spacing", "max_outer_length",
                     "max_outer_width", "max_turns", "width_grid", "spacing_grid",
                     "max_trace_width", "max_spacing"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def widths(self) -> list[float]:
        return _grid(self.min_trace_width, self.max_trace_width, self.width_grid)

    def spacings(self) -> list[float]:
        return _grid(self.min_spacing, self.max_spacing, self.spacing_grid)


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str


@dataclass(frozen=True)
class CandidateDesign:
    geometry: CoilGeometry
    predicted_inductance: float
    relative_error: float
    tuning: TuningSolution | None = None


def _grid(lo: float, hi: float, step: float) -> list[float]:
    n = int(math.floor((hi - lo) / step + 1e-9))
    # rounding keeps grid points exact decimals so equal stacks tie exactly
    return [round(lo + i * step, 9) for i in range(n + 1)]


def drc_check(geometry: CoilGeometry, rules: DesignRules) -> list[Violation]:
    out = []
    if geometry.trace_width < rules.min_trace_width:
        out.append(Violation("MinTraceWidth",
                             f"trace width {geometry.trace_width:g} mm < "
                             f"{rules.min_trace_width:g} mm"))
    if geometry.turns > 1 and geometry.turn_spacing < rules.min_spacing:
        out.append(Violation("MinSpacing",
                             f"turn spacing {geometry.turn_spacing:g} mm < "
                             f"{rules.min_spacing:g} mm"))
    if geometry.turns > rules.max_turns:
        out.append(Violation("MaxTurns",
                             f"{geometry.turns} turns > {rules.max_turns}"))
    if (geometry.outer_length > rules.max_outer_length
            or geometry.outer_width > rules.max_outer_width):
        out.append(Violation("OutlineTooLarge",
                             f"outline {geometry.outer_length:g} x {geometry.outer_width:g} mm "
                             f"exceeds {rules.max_outer_length:g} x {rules.max_outer_width:g} mm"))
    in_x, in_y = geometry.inner_opening()
    if min(in_x, in_y) <= 0:
        out.append(Violation("InnerOpeningNonPositive",
                             f"inner opening {in_x:g} x {in_y:g} mm"))
    elif min(in_x, in_y) < rules.min_spacing:
        out.append(Violation("MinInnerOpening",
                             f"inner opening {min(in_x, in_y):g} mm is narrower than "
                             f"{rules.min_spacing:g} mm and cannot be etched"))
    return out


def _enumerate(outline: tuple[float, float], rules: DesignRules,
               substrate: SubstrateSpec, thickness: float):
    length, width = max(outline), min(outline)
    shape = Shape.SQUARE if length == width else Shape.RECTANGULAR
    for n in range(1, rules.max_turns + 1):
        for w in rules.widths():
            for s in rules.spacings():
                geom = CoilGeometry(shape, length, width, n, w, s, thickness, substrate)
                if not drc_check(geom, rules):
                    yield geom


def _score(geom: CoilGeometry, target: SynthesisTarget):
    ls = inductance_wheeler(geom)
    if target.mode is TargetMode.INDUCTANCE:
        return CandidateDesign(geom, ls, abs(ls - target.target_value) / target.target_value)
    try:
        tuning = synthesize_tuning(ls, target.chip, target.target_value, target.snap)
    except Untunable:
        return None
    err = abs(tuning.achieved_frequency - target.target_value) / target.target_value
    return CandidateDesign(geom, ls, err, tuning)


def search_geometry(target: SynthesisTarget, outline: tuple[float, float],
                    rules: DesignRules = DesignRules(), *,
                    substrate: SubstrateSpec = SubstrateSpec(),
                    conductor_thickness: float = 0.0175) -> list[CandidateDesign]:
    """Exhaustively enumerate turns x width x spacing inside a fixed outline.

    Only DRC-clean candidates within ``target.tolerance`` are returned, best
    first. Ties go to fewer turns, then wider trace, then wider spacing.
    """
    found = []
    for geom in _enumerate(outline, rules, substrate, conductor_thickness):
        cand = _score(geom, target)
        if cand is not None and cand.relative_error <= target.tolerance:
            found.append(cand)
    found.sort(key=_rank_key)
    return found


def _rank_key(c: CandidateDesign):
    g = c.geometry
    # errors compared at 1e-12 so float noise cannot override the tie-break
    return (round(c.relative_error, 12), g.turns, -g.trace_width, -g.turn_spacing)
