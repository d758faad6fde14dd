"""``nfccoil`` command line tool.

Exit codes: 0 success, 1 domain error (message prefixed with the error
class name), 2 usage or design-document error. Output files are written
only after every computation for the command has succeeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import (
    TagNetwork,
    find_resonance,
    q_factor,
    resonance_frequency,
    sweep,
    synthesize_tuning,
)
from .coil import (
    coil_centerline,
    derive_dimensions,
    inductance_wheeler,
    skin_depth,
    trace_length,
    trace_resistance,
)
from .coupling import CouplingScenario, calibrate_threshold, estimate_range, range_curve, rectangular_loop
from .design import DesignDocument, DocumentError, fixture_path, load_document
from .errors import NfcDesignError
from .layout import build_layout, to_gerber, to_svg
from .synthesis import TargetMode, search_geometry

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
NFC_CARRIER_HZ = 13.56e6


@dataclass
class AnalysisReport:
    """Flat report; keys carry unit suffixes in serialized form."""

    values: dict = field(default_factory=dict)
    tuning: dict = field(default_factory=dict)
    measured: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_json(self) -> str:
        body = {**self.values, "tuning": self.tuning}
        if self.measured:
            body["measured"] = self.measured
        body["warnings"] = self.warnings
        return json.dumps(body, indent=2, sort_keys=False) + "\n"

    def to_text(self, title: str) -> str:
        lines = [f"analysis: {title}"]
        for key, value in self.values.items():
            lines.append(f"  {key:<28} {_fmt(value)}")
        lines.append("  tuning")
        for key, value in self.tuning.items():
            lines.append(f"    {key:<26} {_fmt(value)}")
        if self.measured:
            lines.append("  measured")
            for key, value in self.measured.items():
                lines.append(f"    {key:<26} {_fmt(value)}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines) + "\n"


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _tuning_dict(sol) -> dict:
    return {
        "topology": sol.topology.value,
        "ctune_pf": sol.c_tune * 1e12,
        "achieved_frequency_mhz": sol.achieved_frequency / 1e6,
        "snapped": sol.snapped,
    }


def analyze(doc: DesignDocument, target_hz: float = NFC_CARRIER_HZ,
            snap: str = "exact") -> AnalysisReport:
    geom = doc.require_geometry()
    dims = derive_dimensions(geom)
    ls = inductance_wheeler(geom)
    r_ac = trace_resistance(geom, doc.material, target_hz)
    rep = AnalysisReport()
    rep.values = {
        "shape": geom.shape.value,
        "turns_count": geom.turns,
        "d_out_mm": dims.d_out,
        "d_in_mm": dims.d_in,
        "d_mean_mm": dims.d_mean,
        "fill_ratio": dims.fill_ratio,
        "inductance_uh": ls * 1e6,
        "trace_length_m": trace_length(coil_centerline(geom)),
        "skin_depth_um": skin_depth(target_hz, doc.material) * 1e6,
        "dc_resistance_ohm": trace_resistance(geom, doc.material, 0.0),
        "ac_resistance_ohm": r_ac,
        "target_frequency_mhz": target_hz / 1e6,
    }
    sol = synthesize_tuning(ls, doc.chip, target_hz, snap)
    rep.values["q_factor"] = q_factor(TagNetwork(ls, r_ac, doc.chip, sol))
    rep.tuning = _tuning_dict(sol)
    if geom.shape.value == "rectangular":
        rep.warnings.append("rectangular outline: inductance uses side-averaged "
                            "square-coil constants (expect ~10% low)")
    rep.warnings.append("AC resistance omits proximity effect between turns")
    m = doc.measured
    if m.inductance is not None:
        rep.measured["inductance_uh"] = m.inductance * 1e6
        rep.measured["inductance_deviation_pct"] = (ls - m.inductance) / m.inductance * 100
        if m.resistance:
            rep.measured["resistance_ohm"] = m.resistance
            tuned = synthesize_tuning(m.inductance, doc.chip, target_hz, snap)
            rep.measured["q_factor"] = q_factor(TagNetwork(m.inductance, m.resistance,
                                                           doc.chip, tuned))
        if m.tuning is not None:
            rep.measured["fitted_topology"] = m.tuning.topology.value
            rep.measured["fitted_ctune_pf"] = m.tuning.c_tune * 1e12
            rep.measured["fitted_resonance_mhz"] = m.tuning.achieved_frequency / 1e6
    return rep


def _network(doc: DesignDocument, target_hz: float, rc_infinite: bool) -> TagNetwork:
    """Measured coil and fitted capacitor when present, model values otherwise."""
    m = doc.measured
    if m.inductance is not None:
        ls = m.inductance
    else:
        ls = inductance_wheeler(doc.require_geometry())
    if m.resistance is not None:
        rs = m.resistance
    else:
        rs = trace_resistance(doc.require_geometry(), doc.material, target_hz)
    chip = doc.chip
    if rc_infinite:
        chip = type(chip)(chip.capacitance_cc, math.inf)
    tuning = m.tuning if m.tuning is not None else synthesize_tuning(ls, chip, target_hz)
    return TagNetwork(ls, rs, chip, tuning)


def _svg_bytes(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    return buf.getvalue()


def _sweep_plot(points, title: str) -> str:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    f = np.array([p.frequency for p in points]) / 1e6
    z = np.array([p.impedance for p in points])
    with matplotlib.rc_context({"svg.hashsalt": "nfccoil", "svg.fonttype": "none"}):
        fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
        ax1.loglog(f, np.abs(z))
        ax1.set_ylabel("|Z| (ohm)")
        ax1.set_title(title)
        ax2.semilogx(f, np.degrees(np.angle(z)))
        ax2.set_ylabel("phase (deg)")
        ax2.set_xlabel("frequency (MHz)")
        for ax in (ax1, ax2):
            ax.grid(True, which="both", alpha=0.3)
        text = _svg_bytes(fig)
        plt.close(fig)
    return text


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                    for v in row])
    return buf.getvalue()


def _cmd_analyze(args, doc):
    rep = analyze(doc, args.target_mhz * 1e6, args.snap)
    text = rep.to_text(doc.name)
    return text, {f"{doc.name}.report.txt": text, f"{doc.name}.report.json": rep.to_json()}


def _cmd_tune(args, doc):
    m = doc.measured
    if args.inductance == "measured" and m.inductance is None:
        raise DocumentError("--inductance measured needs [measured] inductance_uh")
    use_measured = args.inductance == "measured" or (
        args.inductance == "auto" and m.inductance is not None)
    ls = m.inductance if use_measured else inductance_wheeler(doc.require_geometry())
    sol = synthesize_tuning(ls, doc.chip, args.target_mhz * 1e6, args.snap)
    source = "measured" if use_measured else "model"
    text = (f"inductance {ls * 1e6:.4g} uH ({source}), Cc {doc.chip.capacitance_cc * 1e12:g} pF\n"
            f"{sol.topology.value}, {sol.c_tune * 1e12:.1f} pF, "
            f"achieved {sol.achieved_frequency / 1e6:.4f} MHz"
            f"{' (snapped ' + args.snap.upper() + ')' if sol.snapped else ''}\n")
    payload = {"inductance_uh": ls * 1e6, "inductance_source": source, **_tuning_dict(sol)}
    return text, {f"{doc.name}.tune.json": json.dumps(payload, indent=2) + "\n"}


def _cmd_sweep(args, doc):
    f_lo, f_hi = args.from_mhz * 1e6, args.to_mhz * 1e6
    net = _network(doc, NFC_CARRIER_HZ, args.rc_infinite)
    pts = sweep(net, f_lo, f_hi, args.points)
    files = {f"{doc.name}.sweep.csv": _csv(
        ["frequency_hz", "re_ohm", "im_ohm"],
        [(p.frequency, p.impedance.real, p.impedance.imag) for p in pts])}
    try:
        f_res = find_resonance(pts)
        msg = f"resonance {f_res / 1e6:.4f} MHz (closed form " \
              f"{resonance_frequency(net.antenna_ls, net.equivalent_capacitance()) / 1e6:.4f} MHz)\n"
    except NfcDesignError as exc:
        msg = f"{type(exc).__name__}: {exc}\n"
    if args.plot:
        files[f"{doc.name}.sweep.svg"] = _sweep_plot(pts, f"{doc.name} loop impedance")
    return f"{len(pts)} points {args.from_mhz:g}-{args.to_mhz:g} MHz\n" + msg, files


def _cmd_synthesize(args, doc):
    target = doc.require_target()
    outline = doc.require_outline()
    geom = doc.geometry
    kwargs = {}
    if geom is not None:
        kwargs = {"substrate": geom.substrate, "conductor_thickness": geom.conductor_thickness}
    cands = search_geometry(target, outline, doc.rules, **kwargs)
    rows = []
    for rank, c in enumerate(cands, 1):
        g = c.geometry
        row = [rank, g.turns, g.trace_width, g.turn_spacing, c.predicted_inductance * 1e6,
               c.relative_error]
        if target.mode is TargetMode.RESONANCE:
            row += [c.tuning.topology.value, c.tuning.c_tune * 1e12,
                    c.tuning.achieved_frequency / 1e6]
        rows.append(row)
    header = ["rank", "turns", "trace_width_mm", "turn_spacing_mm", "inductance_uh",
              "relative_error"]
    if target.mode is TargetMode.RESONANCE:
        header += ["topology", "ctune_pf", "achieved_frequency_mhz"]
    lines = [f"{len(cands)} candidates within {target.tolerance:.0%} "
             f"for outline {outline[0]:g} x {outline[1]:g} mm"]
    for row in rows[: args.top]:
        lines.append(f"  #{row[0]:<3} N={row[1]:<2} w={row[2]:.2f} mm s={row[3]:.2f} mm "
                     f"L={row[4]:.4f} uH err={row[5]:.3%}")
    return "\n".join(lines) + "\n", {f"{doc.name}.candidates.csv": _csv(header, rows)}


def _cmd_export(args, doc):
    layout = build_layout(doc.require_geometry(), name=doc.name)
    want_svg = args.svg or not (args.svg or args.gerber)
    want_gbr = args.gerber or not (args.svg or args.gerber)
    files = {}
    if want_svg:
        files[f"{doc.name}.svg"] = to_svg(layout)
    if want_gbr:
        files[f"{doc.name}.gbr"] = to_gerber(layout)
    return "".join(f"wrote {name}\n" for name in files), files


def _scenario_for(doc: DesignDocument) -> CouplingScenario:
    s = doc.scenario
    reader = rectangular_loop(s.reader_length, s.reader_width, 0.0, s.reader_subdivisions)
    return CouplingScenario(doc.require_geometry(), reader, s.subdivisions, s.drive,
                            s.threshold_emf)


def _cmd_range(args, doc):
    s = doc.scenario
    scen = _scenario_for(doc)
    if s.threshold_emf is None:
        cal_path = s.calibration_doc or fixture_path("antenna2")
        cal_doc = load_document(cal_path)
        cal = calibrate_threshold(
            CouplingScenario(cal_doc.require_geometry(), scen.reader_coil,
                             s.subdivisions, s.drive),
            s.frequency, s.calibration_range)
        scen = CouplingScenario(scen.tag_geometry, scen.reader_coil, s.subdivisions,
                                s.drive, cal.threshold_emf)
        source = f"calibrated on {cal_path.name} at {s.calibration_range * 1e3:g} mm"
    else:
        source = "from document"
    est = estimate_range(scen, s.frequency, z_max=s.z_max)
    zs = np.linspace(s.z_max / args.points, s.z_max, args.points)
    rows = range_curve(scen, s.frequency, zs)
    text = (f"threshold {scen.threshold_emf:.6g} V ({source})\n"
            f"estimated read range {est * 100:.2f} cm\n")
    payload = {"threshold_emf_v": scen.threshold_emf, "estimated_range_m": est,
               "frequency_mhz": s.frequency / 1e6}
    return text, {f"{doc.name}.range.csv": _csv(["z_m", "mutual_h", "emf_v"], rows),
                  f"{doc.name}.range.json": json.dumps(payload, indent=2) + "\n"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nfccoil", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("doc", help="design document (TOML)")
        sp.add_argument("-o", "--out-dir", default=".", help="directory for output files")
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", _cmd_analyze, "inductance, resistance, Q and tuning report")
    sp.add_argument("--target-mhz", type=float, default=13.56)
    sp.add_argument("--snap", choices=["exact", "e12", "e24"], default="exact")

    sp = add("tune", _cmd_tune, "choose tuning capacitor and topology")
    sp.add_argument("--target-mhz", type=float, default=13.56)
    sp.add_argument("--snap", choices=["exact", "e12", "e24"], default="exact")
    sp.add_argument("--inductance", choices=["auto", "model", "measured"], default="auto",
                    help="coil inductance source (auto: measured when the document has it)")

    sp = add("sweep", _cmd_sweep, "loop impedance sweep to CSV")
    sp.add_argument("--from-mhz", type=float, default=1.0)
    sp.add_argument("--to-mhz", type=float, default=30.0)
    sp.add_argument("--points", type=int, default=1001)
    sp.add_argument("--plot", action="store_true", help="also write a magnitude/phase SVG")
    sp.add_argument("--rc-infinite", action="store_true", help="treat the chip as lossless")

    sp = add("synthesize", _cmd_synthesize, "search coil geometries for the [target]")
    sp.add_argument("--top", type=int, default=10)

    sp = add("export", _cmd_export, "write SVG and/or Gerber etch masks")
    sp.add_argument("--svg", action="store_true")
    sp.add_argument("--gerber", action="store_true")

    sp = add("range", _cmd_range, "read-range estimate and range curve")
    sp.add_argument("--points", type=int, default=60)
    return p


def execute_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    out_dir = Path(args.out_dir)
    try:
        doc = load_document(args.doc)
        text, files = args.func(args, doc)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NfcDesignError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if not out_dir.is_dir():
        print(f"error: output directory {out_dir} does not exist", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    for name, content in files.items():
        (out_dir / name).write_text(content, encoding="utf-8")
    return EXIT_OK


def main():
    sys.exit(execute_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
