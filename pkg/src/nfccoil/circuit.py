"""Tag equivalent circuit: antenna Rs + Ls in a loop with the chip branch.

The chip is Rc in parallel with Cc. An optional tuning capacitor sits either
in parallel with the chip or in series with it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadRange,
    NonPositiveComponent,
    NonPositiveFrequency,
    NoResonanceInRange,
    Untunable,
    ZeroResistance,
    ZeroSeriesCapacitor,
)

E_SERIES = {
    "e12": (1.0, 1.2, 1.5, 1.8, 2.2, 2.7, 3.3, 3.9, 4.7, 5.6, 6.8, 8.2),
    "e24": (1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
            3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1),
}

# relative tolerance for treating the required capacitance as equal to Cc
_EQUAL_RTOL = 1e-9


class Topology(str, enum.Enum):
    SERIES = "series"
    PARALLEL = "parallel"
    NONE = "none"


@dataclass(frozen=True)
class ChipModel:
    capacitance_cc: float = 50e-12
    resistance_rc: float = 50e3  # math.inf for a lossless chip

    def __post_init__(self):
        if self.capacitance_cc <= 0:
            raise ValueError("chip capacitance must be positive")
        if not self.resistance_rc > 0:
            raise ValueError("chip resistance must be positive or infinite")


@dataclass(frozen=True)
class TuningSolution:
    topology: Topology
    c_tune: float
    achieved_frequency: float
    snapped: bool = False

    def __post_init__(self):
        object.__setattr__(self, "topology", Topology(self.topology))


@dataclass(frozen=True)
class TagNetwork:
    antenna_ls: float
    antenna_rs: float
    chip: ChipModel = ChipModel()
    tuning: TuningSolution | None = None

    def __post_init__(self):
        if self.antenna_ls <= 0:
            raise ValueError("antenna inductance must be positive")
        if self.antenna_rs < 0:
            raise ValueError("antenna resistance must be non-negative")

    def equivalent_capacitance(self) -> float:
        if self.tuning is None:
            return self.chip.capacitance_cc
        return equivalent_capacitance(self.chip.capacitance_cc, self.tuning.c_tune,
                                      self.tuning.topology)


@dataclass(frozen=True)
class ImpedancePoint:
    frequency: float
    impedance: complex


def equivalent_capacitance(cc: float, c_tune: float, topology) -> float:
    topology = Topology(topology)
    if cc <= 0 or c_tune < 0:
        raise NonPositiveComponent("need cc > 0 and c_tune >= 0")
    if topology is Topology.SERIES:
        if c_tune == 0:
            raise ZeroSeriesCapacitor("a 0 F series capacitor opens the loop")
        return cc * c_tune / (cc + c_tune)
    if topology is Topology.PARALLEL:
        return cc + c_tune
    return cc


def resonance_frequency(ls: float, ceq: float) -> float:
    if ls <= 0 or ceq <= 0:
        raise NonPositiveComponent(f"need ls > 0 and ceq > 0, got {ls}, {ceq}")
    return 1.0 / (2 * math.pi * math.sqrt(ls * ceq))


def required_equivalent_capacitance(ls: float, f_target: float) -> float:
    if ls <= 0 or f_target <= 0:
        raise NonPositiveComponent(f"need ls > 0 and f_target > 0, got {ls}, {f_target}")
    omega = 2 * math.pi * f_target
    return 1.0 / (omega * omega * ls)


def snap_to_series(value: float, series: str) -> float:
    """Nearest E-series value by relative error; ties go to the smaller value."""
    mantissas = E_SERIES[series.lower()]
    decade = math.floor(math.log10(value))
    best = None
    for d in (decade - 1, decade, decade + 1):
        for m in mantissas:
            # round away the decade-scaling noise (e.g. 5.6 * 1e-11)
            cand = float(f"{m}e{d}")
            err = abs(cand - value) / value
            key = (err, cand)
            if best is None or key < best:
                best = key
    return best[1]


def synthesize_tuning(ls: float, chip: ChipModel, f_target: float,
                      snap: str = "exact") -> TuningSolution:
    """Pick topology and tuning capacitance to resonate at ``f_target``.

    A required equivalent capacitance above Cc needs a parallel capacitor,
    below Cc a series one. With ``snap`` set to ``"e12"`` or ``"e24"`` the
    capacitor is rounded to the standard series and the frequency recomputed.
    """
    snap = snap.lower()
    if snap not in ("exact", *E_SERIES):
        raise ValueError(f"unknown snap mode {snap!r}")
    c_req = required_equivalent_capacitance(ls, f_target)
    cc = chip.capacitance_cc
    if not c_req > 0:
        raise Untunable(f"required capacitance {c_req} is not positive")
    if abs(c_req - cc) <= _EQUAL_RTOL * cc:
        return TuningSolution(Topology.NONE, 0.0, f_target, snapped=False)
    if c_req > cc:
        topology = Topology.PARALLEL
        c_tune = c_req - cc
    else:
        topology = Topology.SERIES
        denom = cc - c_req
        if denom <= _EQUAL_RTOL * cc:
            raise Untunable("series tuning capacitance diverges")
        c_tune = cc * c_req / denom
    if snap == "exact":
        achieved = resonance_frequency(ls, equivalent_capacitance(cc, c_tune, topology))
        return TuningSolution(topology, c_tune, achieved, snapped=False)
    c_tune = snap_to_series(c_tune, snap)
    achieved = resonance_frequency(ls, equivalent_capacitance(cc, c_tune, topology))
    return TuningSolution(topology, c_tune, achieved, snapped=True)


def _impedance(network: TagNetwork, f):
    omega = 2 * np.pi * np.asarray(f, dtype=float)
    chip = network.chip
    y = 1j * omega * chip.capacitance_cc
    if math.isfinite(chip.resistance_rc):
        y = y + 1.0 / chip.resistance_rc
    tuning = network.tuning
    if tuning is not None and tuning.topology is Topology.PARALLEL:
        y = y + 1j * omega * tuning.c_tune
    z_branch = 1.0 / y
    if tuning is not None and tuning.topology is Topology.SERIES:
        z_branch = z_branch + 1.0 / (1j * omega * tuning.c_tune)
    return network.antenna_rs + 1j * omega * network.antenna_ls + z_branch


def impedance_at(network: TagNetwork, f: float) -> complex:
    """Loop impedance seen by the induced EMF at frequency ``f``."""
    if f <= 0:
        raise NonPositiveFrequency(f"frequency must be positive, got {f}")
    return complex(_impedance(network, f))


def sweep(network: TagNetwork, f_lo: float, f_hi: float,
          n_points: int) -> list[ImpedancePoint]:
    """Log-spaced impedance sweep including both endpoints."""
    if not (0 < f_lo < f_hi) or n_points < 2:
        raise BadRange(f"need 0 < f_lo < f_hi and n_points >= 2, got "
                       f"{f_lo}, {f_hi}, {n_points}")
    freqs = np.geomspace(f_lo, f_hi, n_points)
    freqs[0], freqs[-1] = f_lo, f_hi
    z = _impedance(network, freqs)
    return [ImpedancePoint(float(f), complex(zz)) for f, zz in zip(freqs, z)]


def find_resonance(points) -> float:
    """Frequency of the first sign change of Im(Z), linearly interpolated.

    Samples with Im(Z) exactly zero count only when the nearest nonzero
    samples on either side have opposite signs.
    """
    last = None  # index of the last sample with nonzero reactance
    for i, p in enumerate(points):
        x = p.impedance.imag
        if x == 0:
            continue
        if last is not None and (points[last].impedance.imag < 0) != (x < 0):
            if last == i - 1:
                a, b = points[last], p
                xa, xb = a.impedance.imag, x
                return a.frequency + (b.frequency - a.frequency) * xa / (xa - xb)
            return points[last + 1].frequency
        last = i
    raise NoResonanceInRange("imaginary part of Z does not change sign in the sweep")


def q_factor(network: TagNetwork) -> float:
    """Series-loop quality factor at the network's own resonance."""
    if network.antenna_rs <= 0:
        raise ZeroResistance("Q is undefined for a lossless antenna")
    f_r = resonance_frequency(network.antenna_ls, network.equivalent_capacitance())
    return 2 * math.pi * f_r * network.antenna_ls / network.antenna_rs
