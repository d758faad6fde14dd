"""Design documents: TOML files whose keys carry their units.

Every section is optional at parse time; commands ask for the sections
they need via the ``require_*`` accessors. Unknown sections or keys are
rejected so that a misspelled unit suffix never falls back to a default.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .circuit import ChipModel, Topology, TuningSolution, equivalent_capacitance, resonance_frequency
from .coil import CoilGeometry, ConductorMaterial, SubstrateSpec
from .synthesis import DesignRules, SynthesisTarget

FIXTURE_DIR = Path(__file__).parent / "fixtures"


class DocumentError(ValueError):
    """Malformed or incomplete design document (CLI exit code 2)."""


_SCHEMA = {
    "geometry": {"shape", "outer_length_mm", "outer_width_mm", "turns", "trace_width_mm",
                 "turn_spacing_mm", "conductor_thickness_mm", "substrate_thickness_mm",
                 "substrate_permittivity"},
    "material": {"resistivity_ohm_m", "relative_permeability"},
    "chip": {"capacitance_pf", "resistance_kohm"},
    "measured": {"inductance_uh", "resistance_ohm", "ctune_pf", "topology"},
    "rules": {"min_trace_width_mm", "min_spacing_mm", "max_outer_length_mm",
              "max_outer_width_mm", "max_turns", "width_grid_mm", "spacing_grid_mm",
              "max_trace_width_mm", "max_spacing_mm"},
    "target": {"mode", "inductance_uh", "frequency_mhz", "tolerance", "snap",
               "outline_length_mm", "outline_width_mm"},
    "scenario": {"reader_length_mm", "reader_width_mm", "reader_subdivisions",
                 "subdivisions", "drive_a", "frequency_mhz", "z_max_mm",
                 "threshold_emf_v", "calibration_doc", "calibration_range_mm"},
}

_REQUIRED_GEOMETRY = {"outer_length_mm", "outer_width_mm", "turns", "trace_width_mm",
                      "turn_spacing_mm"}


@dataclass(frozen=True)
class Measured:
    inductance: float | None = None  # H
    resistance: float | None = None  # ohm
    tuning: TuningSolution | None = None


@dataclass(frozen=True)
class ScenarioSettings:
    reader_length: float = 0.040  # m
    reader_width: float = 0.040
    reader_subdivisions: int = 40
    subdivisions: int = 40
    drive: float = 1.0
    frequency: float = 13.56e6
    z_max: float = 0.3
    threshold_emf: float | None = None
    calibration_doc: Path | None = None
    calibration_range: float = 0.050


@dataclass(frozen=True)
class DesignDocument:
    path: Path
    geometry: CoilGeometry | None = None
    material: ConductorMaterial = field(default_factory=ConductorMaterial)
    chip: ChipModel = field(default_factory=ChipModel)
    measured: Measured = field(default_factory=Measured)
    rules: DesignRules = field(default_factory=DesignRules)
    target: SynthesisTarget | None = None
    outline: tuple[float, float] | None = None
    scenario: ScenarioSettings = field(default_factory=ScenarioSettings)

    @property
    def name(self) -> str:
        return self.path.stem

    def require_geometry(self) -> CoilGeometry:
        if self.geometry is None:
            raise DocumentError(f"{self.path}: [geometry] section is required")
        return self.geometry

    def require_target(self) -> SynthesisTarget:
        if self.target is None:
            raise DocumentError(f"{self.path}: [target] section is required")
        return self.target

    def require_outline(self) -> tuple[float, float]:
        if self.outline is not None:
            return self.outline
        g = self.require_geometry()
        return (g.outer_length, g.outer_width)


def _number(section, key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"[{section}] {key} must be a number, got {value!r}")
    return float(value)


def _section(data, name):
    sec = data.get(name, {})
    if not isinstance(sec, dict):
        raise DocumentError(f"[{name}] must be a table")
    unknown = set(sec) - _SCHEMA[name]
    if unknown:
        raise DocumentError(f"[{name}] unknown keys: {', '.join(sorted(unknown))}")
    return sec


def _geometry(sec) -> CoilGeometry | None:
    if not sec:
        return None
    missing = _REQUIRED_GEOMETRY - set(sec)
    if missing:
        raise DocumentError(f"[geometry] missing keys: {', '.join(sorted(missing))}")
    num = {k: _number("geometry", k, v) for k, v in sec.items() if k != "shape"}
    length, width = num["outer_length_mm"], num["outer_width_mm"]
    shape = sec.get("shape", "square" if length == width else "rectangular")
    if num["turns"] != int(num["turns"]):
        raise DocumentError("[geometry] turns must be an integer")
    substrate = SubstrateSpec(num.get("substrate_thickness_mm", 0.127),
                              num.get("substrate_permittivity", 4.6))
    return CoilGeometry(
        shape=shape,
        outer_length=max(length, width),
        outer_width=min(length, width),
        turns=int(num["turns"]),
        trace_width=num["trace_width_mm"],
        turn_spacing=num["turn_spacing_mm"],
        conductor_thickness=num.get("conductor_thickness_mm", 0.0175),
        substrate=substrate,
    )


def _chip(sec) -> ChipModel:
    cc = _number("chip", "capacitance_pf", sec.get("capacitance_pf", 50.0)) * 1e-12
    rc = sec.get("resistance_kohm", 50.0)
    if isinstance(rc, str) and rc.lower() in ("inf", "infinite"):
        rc = math.inf
    else:
        rc = _number("chip", "resistance_kohm", rc) * 1e3
    return ChipModel(cc, rc)


def _measured(sec, chip: ChipModel) -> Measured:
    ls = sec.get("inductance_uh")
    rs = sec.get("resistance_ohm")
    tuning = None
    if "ctune_pf" in sec or "topology" in sec:
        if not {"ctune_pf", "topology"} <= set(sec):
            raise DocumentError("[measured] ctune_pf and topology must be given together")
        topo = Topology(sec["topology"])
        ct = _number("measured", "ctune_pf", sec["ctune_pf"]) * 1e-12
        f = math.nan
        if ls is not None:
            ceq = equivalent_capacitance(chip.capacitance_cc, ct, topo)
            f = resonance_frequency(_number("measured", "inductance_uh", ls) * 1e-6, ceq)
        tuning = TuningSolution(topo, ct, f, snapped=False)
    return Measured(
        None if ls is None else _number("measured", "inductance_uh", ls) * 1e-6,
        None if rs is None else _number("measured", "resistance_ohm", rs),
        tuning,
    )


_RULE_KEYS = {
    "min_trace_width_mm": "min_trace_width", "min_spacing_mm": "min_spacing",
    "max_outer_length_mm": "max_outer_length", "max_outer_width_mm": "max_outer_width",
    "max_turns": "max_turns", "width_grid_mm": "width_grid",
    "spacing_grid_mm": "spacing_grid", "max_trace_width_mm": "max_trace_width",
    "max_spacing_mm": "max_spacing",
}


def _rules(sec) -> DesignRules:
    kw = {_RULE_KEYS[k]: _number("rules", k, v) for k, v in sec.items()}
    if "max_turns" in kw:
        kw["max_turns"] = int(kw["max_turns"])
    return DesignRules(**kw)


def _target(sec, chip: ChipModel):
    if not sec:
        return None, None
    mode = sec.get("mode", "inductance")
    if mode == "inductance":
        if "inductance_uh" not in sec:
            raise DocumentError("[target] inductance mode needs inductance_uh")
        value = _number("target", "inductance_uh", sec["inductance_uh"]) * 1e-6
    elif mode == "resonance":
        if "frequency_mhz" not in sec:
            raise DocumentError("[target] resonance mode needs frequency_mhz")
        value = _number("target", "frequency_mhz", sec["frequency_mhz"]) * 1e6
    else:
        raise DocumentError(f"[target] unknown mode {mode!r}")
    target = SynthesisTarget(mode, value, chip,
                             _number("target", "tolerance", sec.get("tolerance", 0.05)),
                             sec.get("snap", "exact"))
    outline = None
    if "outline_length_mm" in sec or "outline_width_mm" in sec:
        try:
            outline = (_number("target", "outline_length_mm", sec["outline_length_mm"]),
                       _number("target", "outline_width_mm", sec["outline_width_mm"]))
        except KeyError as exc:
            raise DocumentError(f"[target] missing {exc.args[0]}") from None
    return target, outline


def _scenario(sec, base: Path) -> ScenarioSettings:
    kw = {}
    scale = {"reader_length_mm": ("reader_length", 1e-3),
             "reader_width_mm": ("reader_width", 1e-3),
             "drive_a": ("drive", 1.0),
             "frequency_mhz": ("frequency", 1e6),
             "z_max_mm": ("z_max", 1e-3),
             "threshold_emf_v": ("threshold_emf", 1.0),
             "calibration_range_mm": ("calibration_range", 1e-3)}
    for key, value in sec.items():
        if key in scale:
            name, factor = scale[key]
            kw[name] = _number("scenario", key, value) * factor
        elif key in ("reader_subdivisions", "subdivisions"):
            kw[key] = int(_number("scenario", key, value))
        elif key == "calibration_doc":
            kw[key] = (base / str(value)).resolve()
    return ScenarioSettings(**kw)


def parse_document(text: str, path: Path = Path("design.toml")) -> DesignDocument:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise DocumentError(f"{path}: {exc}") from None
    unknown = set(data) - set(_SCHEMA)
    if unknown:
        raise DocumentError(f"{path}: unknown sections: {', '.join(sorted(unknown))}")
    try:
        chip = _chip(_section(data, "chip"))
        target, outline = _target(_section(data, "target"), chip)
        return DesignDocument(
            path=path,
            geometry=_geometry(_section(data, "geometry")),
            material=ConductorMaterial(**{
                {"resistivity_ohm_m": "resistivity",
                 "relative_permeability": "relative_permeability"}[k]:
                    _number("material", k, v)
                for k, v in _section(data, "material").items()}),
            chip=chip,
            measured=_measured(_section(data, "measured"), chip),
            rules=_rules(_section(data, "rules")),
            target=target,
            outline=outline,
            scenario=_scenario(_section(data, "scenario"), path.parent),
        )
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def load_document(path) -> DesignDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, path)


def fixture_path(name: str) -> Path:
    """Path of a bundled example document, e.g. ``fixture_path("antenna1")``."""
    return FIXTURE_DIR / f"{name}.toml"
