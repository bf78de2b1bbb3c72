"""Minimal static SVG of theta trajectories in the complex energy plane."""

from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .resonance import TrajectoryPoint

_COLORS = ("#1f77b4", "#ff7f0e", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def trajectories_svg(
    trajectories: Sequence[Sequence[TrajectoryPoint]],
    best: Optional[TrajectoryPoint] = None,
    width: int = 640,
    height: int = 480,
    title: str = "",
) -> str:
    pts = [p for t in trajectories for p in t]
    if not pts:
        raise ValueError("nothing to plot")
    margin = 60
    xs = [p.energy.real for p in pts]
    ys = [p.energy.imag for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    dx = (x1 - x0) or 1e-3
    dy = (y1 - y0) or 1e-3
    x0, x1 = x0 - 0.05 * dx, x1 + 0.05 * dx
    y0, y1 = y0 - 0.05 * dy, y1 + 0.05 * dy

    def sx(v):
        return margin + (v - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(v):
        return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 15}" text-anchor="middle" font-size="13">Re E (Hartree)</text>',
        f'<text x="15" y="{height / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 15 {height / 2:.1f})">Im E (Hartree)</text>',
    ]
    for v, anchor in ((x0, "start"), (x1, "end")):
        out.append(f'<text x="{sx(v):.1f}" y="{height - margin + 16}" text-anchor="{anchor}" font-size="10">{v:.4f}</text>')
    for v in (y0, y1):
        out.append(f'<text x="{margin - 4}" y="{sy(v):.1f}" text-anchor="end" font-size="10">{v:.4f}</text>')
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="25" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for i, traj in enumerate(trajectories):
        if not traj:
            continue
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{sx(p.energy.real):.2f},{sy(p.energy.imag):.2f}" for p in traj)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for p in traj:
            out.append(f'<circle cx="{sx(p.energy.real):.2f}" cy="{sy(p.energy.imag):.2f}" r="2.5" fill="{color}"/>')
        last = traj[-1]
        out.append(
            f'<text x="{sx(last.energy.real) + 4:.2f}" y="{sy(last.energy.imag):.2f}" font-size="10" '
            f'fill="{color}">alpha={traj[0].alpha:g}</text>'
        )
    if best is not None:
        out.append(
            f'<circle cx="{sx(best.energy.real):.2f}" cy="{sy(best.energy.imag):.2f}" r="6" '
            'fill="none" stroke="green" stroke-width="2"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
