"""Etch-mask output: SVG preview and RS-274X Gerber for a single copper layer."""
from __future__ import annotations

from dataclasses import dataclass, field

from .coil import CoilGeometry, coil_centerline

# 3.6 format: coordinates are integer multiples of 1e-6 mm
GERBER_SCALE = 10**6


@dataclass(frozen=True)
class PadSpec:
    center: tuple[float, float]
    size: tuple[float, float] = (1.5, 1.5)

    def __post_init__(self):
        if min(self.size) <= 0:
            raise ValueError("pad size must be positive")


@dataclass(frozen=True)
class LayoutDocument:
    centerline: tuple[tuple[float, float], ...]
    trace_width: float
    pads: tuple[PadSpec, ...]
    outline: tuple[float, float]
    name: str = field(default="coil", compare=False)

    def __post_init__(self):
        if len(self.pads) != 2:
            raise ValueError("layout needs exactly two pads (outer and inner terminal)")


def build_layout(geometry: CoilGeometry, pad_size=(1.5, 1.5), name="coil") -> LayoutDocument:
    pts = tuple(coil_centerline(geometry))
    pads = (PadSpec(pts[0], tuple(pad_size)), PadSpec(pts[-1], tuple(pad_size)))
    return LayoutDocument(pts, geometry.trace_width, pads,
                          (geometry.outer_length, geometry.outer_width), name)


def _num(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def to_svg(layout: LayoutDocument) -> str:
    """SVG in mm user units. The y axis is flipped so the image is top-up."""
    width, height = layout.outline

    def xy(p):
        return f"{_num(p[0])},{_num(height - p[1])}"

    path = "M " + " L ".join(xy(p) for p in layout.centerline)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}mm" height="{_num(height)}mm" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f'  <title>{layout.name}</title>',
        f'  <path id="trace" d="{path}" fill="none" stroke="#000000" '
        f'stroke-width="{_num(layout.trace_width)}" stroke-linejoin="round" '
        f'stroke-linecap="round"/>',
    ]
    for i, pad in enumerate(layout.pads):
        pw, ph = pad.size
        x = pad.center[0] - pw / 2
        y = height - pad.center[1] - ph / 2
        lines.append(f'  <rect id="pad{i + 1}" x="{_num(x)}" y="{_num(y)}" '
                     f'width="{_num(pw)}" height="{_num(ph)}" fill="#000000"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _coord(v: float) -> int:
    return int(round(v * GERBER_SCALE))


def to_gerber(layout: LayoutDocument) -> str:
    """RS-274X, mm, absolute 3.6 coordinates, dark polarity."""
    out = [
        f"G04 {layout.name} single-layer coil etch mask*",
        "G04 inner terminal needs an off-board jumper to reach the outer pad*",
        "%FSLAX36Y36*%",
        "%MOMM*%",
        "%LPD*%",
        f"%ADD10C,{layout.trace_width:.3f}*%",
    ]
    pad_codes = {}
    for pad in layout.pads:
        if pad.size not in pad_codes:
            code = 11 + len(pad_codes)
            pad_codes[pad.size] = code
            out.append(f"%ADD{code}R,{pad.size[0]:.3f}X{pad.size[1]:.3f}*%")
    out += ["G01*", "D10*"]
    x0, y0 = layout.centerline[0]
    out.append(f"X{_coord(x0)}Y{_coord(y0)}D02*")
    for x, y in layout.centerline[1:]:
        out.append(f"X{_coord(x)}Y{_coord(y)}D01*")
    current = None
    for pad in layout.pads:
        if pad_codes[pad.size] != current:
            current = pad_codes[pad.size]
            out.append(f"D{current}*")
        out.append(f"X{_coord(pad.center[0])}Y{_coord(pad.center[1])}D03*")
    out.append("M02*")
    return "\n".join(out) + "\n"
