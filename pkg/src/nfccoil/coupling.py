"""Reader-to-tag coupling via filament mutual inductance, and read range.

Coils are straight-segment filaments. Mutual inductance uses the midpoint
rule on the Neumann double line integral. Read range is the largest axial
separation at which the EMF induced in the tag reaches a calibrated
threshold.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coil import MU0, CoilGeometry, coil_centerline
from .errors import CoilsIntersect

# closest allowed approach between segment midpoints, m
MIN_SEPARATION = 1e-6


@dataclass(frozen=True, eq=False)
class FilamentCoil:
    """Connected straight segments in 3D, coordinates in meters."""

    starts: np.ndarray
    ends: np.ndarray

    def __post_init__(self):
        starts = np.ascontiguousarray(self.starts, dtype=float).reshape(-1, 3)
        ends = np.ascontiguousarray(self.ends, dtype=float).reshape(-1, 3)
        if starts.shape != ends.shape:
            raise ValueError("starts and ends must have the same shape")
        starts.flags.writeable = False
        ends.flags.writeable = False
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "ends", ends)

    def __len__(self):
        return len(self.starts)

    @property
    def midpoints(self) -> np.ndarray:
        return np.ascontiguousarray(0.5 * (self.starts + self.ends))

    @property
    def vectors(self) -> np.ndarray:
        return np.ascontiguousarray(self.ends - self.starts)

    def segment_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def rotate_x(self, angle: float) -> FilamentCoil:
        """Rotate about an x-parallel axis through the coil's vertex centroid."""
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[1, 0, 0], [0, c, -s], [0, s, c]])
        center = self.starts.mean(axis=0)
        return FilamentCoil((self.starts - center) @ rot.T + center,
                            (self.ends - center) @ rot.T + center)


def _subdivide(vertices_m: np.ndarray, z: float, subdivisions: int) -> FilamentCoil:
    if subdivisions < 1:
        raise ValueError("subdivisions_per_side must be >= 1")
    t = np.arange(subdivisions + 1) / subdivisions
    starts, ends = [], []
    for p0, p1 in zip(vertices_m[:-1], vertices_m[1:]):
        pts = p0 + t[:, None] * (p1 - p0)
        pts[-1] = p1  # exact joins between sides
        starts.append(pts[:-1])
        ends.append(pts[1:])
    starts = np.vstack(starts)
    ends = np.vstack(ends)
    zcol = np.full((len(starts), 1), float(z))
    return FilamentCoil(np.hstack([starts, zcol]), np.hstack([ends, zcol]))


def discretize_coil(geometry: CoilGeometry, z: float,
                    subdivisions_per_side: int = 40) -> FilamentCoil:
    """Spiral centerline as a filament centered on the z axis at height ``z``."""
    pts = np.array(coil_centerline(geometry), dtype=float)
    pts -= (geometry.outer_length / 2, geometry.outer_width / 2)
    return _subdivide(pts * 1e-3, z, subdivisions_per_side)


def rectangular_loop(length: float, width: float, z: float = 0.0,
                     subdivisions_per_side: int = 40) -> FilamentCoil:
    """Closed single-turn rectangular loop (sides in meters) centered on the z axis."""
    hx, hy = length / 2, width / 2
    pts = np.array([(-hx, hy), (hx, hy), (hx, -hy), (-hx, -hy), (-hx, hy)])
    return _subdivide(pts, z, subdivisions_per_side)


def _canonical_key(coil: FilamentCoil):
    return (len(coil), coil.starts.tobytes(), coil.ends.tobytes())


def mutual_inductance(a: FilamentCoil, b: FilamentCoil) -> float:
    """Neumann mutual inductance in henries.

    The operands are put in a canonical order before summing so that
    ``mutual_inductance(a, b) == mutual_inductance(b, a)`` bit for bit.
    """
    if _canonical_key(b) < _canonical_key(a):
        a, b = b, a
    total, min_dist = kernels.neumann_sum(a.midpoints, a.vectors, b.midpoints, b.vectors)
    if min_dist <= MIN_SEPARATION:
        raise CoilsIntersect(f"segment midpoints approach within {min_dist:.3g} m")
    return MU0 / (4 * math.pi) * total


@dataclass(frozen=True)
class CouplingScenario:
    """Fixed reader coil at z = 0 and a tag coil placed coaxially at height z."""

    tag_geometry: CoilGeometry
    reader_coil: FilamentCoil = field(
        default_factory=lambda: rectangular_loop(0.040, 0.040, 0.0, 40))
    subdivisions_per_side: int = 40
    drive: float = 1.0  # reader current, A
    threshold_emf: float | None = None  # V

    def tag_coil(self, z: float) -> FilamentCoil:
        return discretize_coil(self.tag_geometry, z, self.subdivisions_per_side)

    def mutual(self, z: float) -> float:
        return mutual_inductance(self.reader_coil, self.tag_coil(z))


def induced_emf(scenario: CouplingScenario, z: float, frequency: float) -> float:
    """EMF amplitude in volts induced in the tag at separation ``z``."""
    if z <= 0:
        raise ValueError("separation must be positive")
    if frequency == 0:
        return 0.0
    return 2 * math.pi * frequency * abs(scenario.mutual(z)) * scenario.drive


def calibrate_threshold(scenario: CouplingScenario, frequency: float,
                        range_m: float) -> CouplingScenario:
    """Copy of ``scenario`` whose threshold puts its read range at ``range_m``."""
    thr = induced_emf(scenario, range_m, frequency)
    return dataclasses.replace(scenario, threshold_emf=thr)


def estimate_range(scenario: CouplingScenario, frequency: float, *,
                   z_max: float = 0.3, resolution: float = 1e-4,
                   coarse_points: int = 30) -> float:
    """Largest separation in (0, z_max] where the EMF reaches the threshold.

    A coarse scan from the top of the bracket locates the outermost
    crossing, which is then bisected to ``resolution``. Returns 0.0 when the
    EMF is below threshold even at the smallest separation.
    """
    if scenario.threshold_emf is None:
        raise ValueError("scenario threshold_emf is not calibrated")
    thr = scenario.threshold_emf

    def ok(z):
        return induced_emf(scenario, z, frequency) >= thr

    grid = np.linspace(resolution, z_max, coarse_points)
    if ok(grid[-1]):
        return float(z_max)
    lo = hi = None
    for z_lo, z_hi in zip(grid[-2::-1], grid[:0:-1]):
        if ok(z_lo):
            lo, hi = float(z_lo), float(z_hi)
            break
    if lo is None:
        return 0.0
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def range_curve(scenario: CouplingScenario, frequency: float, zs) -> list[tuple[float, float, float]]:
    """(z, M, EMF) rows for a range-curve export."""
    rows = []
    for z in zs:
        m = scenario.mutual(float(z))
        rows.append((float(z), m, 2 * math.pi * frequency * abs(m) * scenario.drive))
    return rows
