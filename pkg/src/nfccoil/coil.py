"""Planar rectangular spiral coil: geometry, Wheeler inductance, resistance.

All user-facing lengths are millimeters; electrical results are SI.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import InnerOpeningNonPositive, NonPositiveFrequency

MU0 = 4e-7 * math.pi


class Shape(str, enum.Enum):
    RECTANGULAR = "rectangular"
    SQUARE = "square"


@dataclass(frozen=True)
class SubstrateSpec:
    """Substrate metadata. Not used by the inductance formula."""

    thickness: float = 0.127
    relative_permittivity: float = 4.6

    def __post_init__(self):
        if self.thickness <= 0:
            raise ValueError("substrate thickness must be positive")
        if self.relative_permittivity < 1:
            raise ValueError("relative permittivity must be >= 1")


@dataclass(frozen=True)
class CoilGeometry:
    """Rectangular planar spiral, all lengths in mm.

    ``outer_length`` is the long side (x), ``outer_width`` the short side (y),
    both measured to the outer copper edge. ``turn_spacing`` is the
    edge-to-edge clearance between adjacent turns.

    The inner-opening constraint is deliberately not enforced here so that
    over-stacked geometries can still be passed to :func:`drc_check`; it is
    raised by :func:`derive_dimensions` instead.
    """

    shape: Shape
    outer_length: float
    outer_width: float
    turns: int
    trace_width: float
    turn_spacing: float
    conductor_thickness: float = 0.0175
    substrate: SubstrateSpec = field(default_factory=SubstrateSpec)

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        if int(self.turns) != self.turns or self.turns < 1:
            raise ValueError(f"turns must be a positive integer, got {self.turns}")
        object.__setattr__(self, "turns", int(self.turns))
        if self.outer_length <= 0 or self.outer_width <= 0:
            raise ValueError("outer dimensions must be positive")
        if self.trace_width <= 0:
            raise ValueError("trace_width must be positive")
        if self.turn_spacing < 0:
            raise ValueError("turn_spacing must be non-negative")
        if self.conductor_thickness <= 0:
            raise ValueError("conductor_thickness must be positive")
        if self.shape is Shape.SQUARE and self.outer_length != self.outer_width:
            raise ValueError("square coil requires outer_length == outer_width")

    @property
    def pitch(self) -> float:
        """Centerline distance between adjacent turns."""
        return self.trace_width + self.turn_spacing

    @property
    def stack_width(self) -> float:
        """Copper plus clearance consumed by the winding on one side."""
        return self.turns * self.trace_width + (self.turns - 1) * self.turn_spacing

    def inner_opening(self) -> tuple[float, float]:
        """Inner opening (x, y) to the inner copper edge; may be non-positive."""
        return (self.outer_length - 2 * self.stack_width,
                self.outer_width - 2 * self.stack_width)

    def scaled(self, factor: float) -> CoilGeometry:
        return CoilGeometry(
            shape=self.shape,
            outer_length=self.outer_length * factor,
            outer_width=self.outer_width * factor,
            turns=self.turns,
            trace_width=self.trace_width * factor,
            turn_spacing=self.turn_spacing * factor,
            conductor_thickness=self.conductor_thickness * factor,
            substrate=self.substrate,
        )


@dataclass(frozen=True)
class DerivedDimensions:
    d_out: float  # mm
    d_in: float  # mm
    d_mean: float  # mm
    fill_ratio: float


@dataclass(frozen=True)
class WheelerConstants:
    k1: float = 2.34
    k2: float = 2.75
    mu0: float = MU0


@dataclass(frozen=True)
class ConductorMaterial:
    resistivity: float = 1.72e-8  # ohm m, annealed copper
    relative_permeability: float = 1.0

    def __post_init__(self):
        if self.resistivity <= 0:
            raise ValueError("resistivity must be positive")


COPPER = ConductorMaterial()


def derive_dimensions(geometry: CoilGeometry) -> DerivedDimensions:
    """Side-averaged outer/inner diameters, mean diameter and fill ratio.

    Diameters run to copper edges (outer edge of the first turn, inner edge
    of the last turn). Rectangles are reduced to a square of the mean side.
    """
    in_x, in_y = geometry.inner_opening()
    if min(in_x, in_y) <= 0:
        raise InnerOpeningNonPositive(
            f"winding stack of {geometry.stack_width:g} mm per side leaves an inner "
            f"opening of {in_x:g} x {in_y:g} mm"
        )
    d_out = (geometry.outer_length + geometry.outer_width) / 2
    d_in = (in_x + in_y) / 2
    return DerivedDimensions(
        d_out=d_out,
        d_in=d_in,
        d_mean=(d_out + d_in) / 2,
        fill_ratio=(d_out - d_in) / (d_out + d_in),
    )


def inductance_wheeler(geometry: CoilGeometry,
                       constants: WheelerConstants = WheelerConstants()) -> float:
    """Modified Wheeler inductance in henries."""
    dims = derive_dimensions(geometry)
    n = geometry.turns
    return (constants.k1 * constants.mu0 * n * n * dims.d_mean * 1e-3
            / (1 + constants.k2 * dims.fill_ratio))


def coil_centerline(geometry: CoilGeometry) -> list[tuple[float, float]]:
    """Centerline polyline of the spiral in mm, y axis pointing up.

    The outline spans (0, 0)..(outer_length, outer_width). Winding starts at
    the top-left outer terminal and runs clockwise inward: top, right,
    bottom, left per turn, giving 4 segments per turn. The left side of each
    turn stops one pitch short of the top so the next turn steps inward;
    the inner terminal is the end of the last left side.
    """
    derive_dimensions(geometry)  # raises on an over-stacked outline
    lx, ly = geometry.outer_length, geometry.outer_width
    half_w = geometry.trace_width / 2
    pitch = geometry.pitch
    n = geometry.turns

    def inset(k):
        return half_w + k * pitch

    pts = [(inset(0), ly - inset(0))]
    for k in range(n):
        c = inset(k)
        pts.append((lx - c, ly - c))
        pts.append((lx - c, c))
        pts.append((c, c))
        top_next = ly - inset(k + 1)
        if k == n - 1 and top_next <= c:
            # the entry gap would swallow the last left side; end midway up it
            top_next = ly / 2
        pts.append((c, top_next))
    return pts


def trace_length(polyline) -> float:
    """Total polyline length in meters for vertices given in mm."""
    if len(polyline) < 2:
        raise ValueError("polyline needs at least 2 vertices")
    total = math.fsum(
        math.hypot(x1 - x0, y1 - y0)
        for (x0, y0), (x1, y1) in zip(polyline, polyline[1:])
    )
    return total * 1e-3


def skin_depth(frequency: float, material: ConductorMaterial = COPPER) -> float:
    """Skin depth in meters."""
    if frequency <= 0:
        raise NonPositiveFrequency(f"frequency must be positive, got {frequency}")
    omega = 2 * math.pi * frequency
    return math.sqrt(2 * material.resistivity / (omega * MU0 * material.relative_permeability))


def trace_resistance(geometry: CoilGeometry,
                     material: ConductorMaterial = COPPER,
                     frequency: float = 0.0) -> float:
    """Series resistance of the trace in ohms.

    At ``frequency > 0`` the conductor thickness is replaced by the effective
    thickness ``delta * (1 - exp(-t / delta))``. Proximity effect between
    turns is not modeled, so this underestimates measured coil resistance.
    """
    if frequency < 0:
        raise NonPositiveFrequency(f"frequency must be >= 0, got {frequency}")
    length = trace_length(coil_centerline(geometry))
    width = geometry.trace_width * 1e-3
    t = geometry.conductor_thickness * 1e-3
    if frequency > 0:
        delta = skin_depth(frequency, material)
        t = delta * -math.expm1(-t / delta)
    return material.resistivity * length / (width * t)
