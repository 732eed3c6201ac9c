"""Static text and SVG views of an allocation."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .allocation import Allocation
from .errors import InstanceError
from .instance import Instance

PALETTE = ("#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


def _check(inst: Instance, alloc: Allocation) -> None:
    if len(alloc) != inst.k:
        raise InstanceError(f"allocation has {len(alloc)} pieces for {inst.k} families")


def render_text(inst: Instance, alloc: Allocation) -> str:
    _check(inst, alloc)
    lines = []
    for fam, piece in zip(inst.families, alloc.pieces):
        vals = " ".join(f"{nm}={m.value(piece)}" for nm, m in zip(fam.member_names, fam.members))
        lines.append(f"{fam.name} (w={fam.weight}): {piece}  {vals}")
    return "\n".join(lines) + "\n"


def _x(v: Fraction, left: int, width: int) -> str:
    return f"{left + float(v) * width:.3f}"


def render_svg(inst: Instance, alloc: Allocation, width: int = 600) -> str:
    _check(inst, alloc)
    left, top, bar_h = 20, 20, 40
    legend_top = top + bar_h + 40
    height = legend_top + 20 * inst.k + 10
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width + 2 * left}" height="{height}">',
    ]
    cuts = set()
    for j, piece in enumerate(alloc.pieces):
        color = PALETTE[j % len(PALETTE)]
        for a, b in piece.intervals:
            cuts.update((a, b))
            w = f"{float(b - a) * width:.3f}"
            out.append(
                f'  <rect x="{_x(a, left, width)}" y="{top}" width="{w}" height="{bar_h}" '
                f'fill="{color}" stroke="black" stroke-width="0.5"><title>{escape(inst.families[j].name)}: [{a},{b}]</title></rect>'
            )
    for t, c in enumerate(sorted(cuts)):
        x = _x(c, left, width)
        # alternate label rows so neighbouring cuts stay readable
        y = top + bar_h + 14 + 12 * (t % 2)
        out.append(f'  <line x1="{x}" y1="{top}" x2="{x}" y2="{top + bar_h + 4}" stroke="black" stroke-width="1"/>')
        out.append(f'  <text x="{x}" y="{y}" font-size="10" text-anchor="middle">{c}</text>')
    for j, fam in enumerate(inst.families):
        y = legend_top + 20 * j
        out.append(f'  <rect x="{left}" y="{y}" width="12" height="12" fill="{PALETTE[j % len(PALETTE)]}"/>')
        label = f"{fam.name} (w={fam.weight}): {alloc.pieces[j]}"
        out.append(f'  <text x="{left + 18}" y="{y + 10}" font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(inst: Instance, alloc: Allocation, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(inst, alloc)
    if fmt == "svg":
        return render_svg(inst, alloc)
    raise ValueError(f"unknown format {fmt!r}")
