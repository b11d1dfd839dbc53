"""Static pictures of f(D): images of concentric circles, radial rays and the boundary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError
from .series import HarmonicMap, eval_harmonic

FORMATS = ("svg", "ppm")


@dataclass(frozen=True)
class RenderSpec:
    circles: int = 8
    rays: int = 16
    samples_per_curve: int = 256
    format: str = "svg"
    output_path: str = "map.svg"

    def __post_init__(self):
        if self.circles < 2:
            raise DomainError("need at least 2 circles")
        if self.rays < 4:
            raise DomainError("need at least 4 rays")
        if self.samples_per_curve < 64:
            raise DomainError("need at least 64 samples per curve")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}")


def image_curves(f: HarmonicMap, spec: RenderSpec) -> dict[str, list[np.ndarray]]:
    """Images of the circles |z| = k/circles (k < circles), the rays and the unit circle."""
    n = spec.samples_per_curve
    theta = 2.0 * np.pi * np.arange(n) / n
    ring = np.exp(1j * theta)
    circles = [eval_harmonic(f, (k / spec.circles) * ring) for k in range(1, spec.circles)]
    t = np.linspace(0.0, 1.0, n)
    rays = [eval_harmonic(f, t * np.exp(2j * np.pi * j / spec.rays)) for j in range(spec.rays)]
    return {"circles": circles, "rays": rays, "boundary": [eval_harmonic(f, ring)]}


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _path(points: np.ndarray, closed: bool) -> str:
    coords = [f"{_fmt(w.real)},{_fmt(-w.imag)}" for w in points]
    d = "M " + " L ".join(coords)
    return d + " Z" if closed else d


def svg_document(curves: dict[str, list[np.ndarray]]) -> str:
    allpts = np.concatenate([c for group in curves.values() for c in group])
    lo_x, hi_x = float(allpts.real.min()), float(allpts.real.max())
    lo_y, hi_y = float(-allpts.imag.max()), float(-allpts.imag.min())
    pad = 0.05 * max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    vb = f"{lo_x - pad:.6f} {lo_y - pad:.6f} {hi_x - lo_x + 2 * pad:.6f} {hi_y - lo_y + 2 * pad:.6f}"
    stroke = 0.004 * max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vb}" width="800" height="800">',
        f'<g fill="none" stroke="#3060a0" stroke-width="{stroke:.6f}">',
    ]
    for i, c in enumerate(curves["circles"]):
        lines.append(f'<path class="circle" id="circle-{i + 1}" d="{_path(c, True)}"/>')
    for j, c in enumerate(curves["rays"]):
        lines.append(f'<path class="ray" id="ray-{j}" d="{_path(c, False)}"/>')
    lines.append("</g>")
    lines.append(f'<path id="boundary" fill="none" stroke="#b02020" stroke-width="{2 * stroke:.6f}" '
                 f'd="{_path(curves["boundary"][0], True)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def ppm_image(curves: dict[str, list[np.ndarray]], size: int = 512) -> bytes:
    allpts = np.concatenate([c for group in curves.values() for c in group])
    lo = np.array([allpts.real.min(), allpts.imag.min()])
    span = max(float(allpts.real.max() - lo[0]), float(allpts.imag.max() - lo[1]), 1e-9) * 1.1
    lo = lo - 0.05 * span / 1.1
    canvas = np.full((size, size, 3), 255, dtype=np.uint8)

    def draw(points: np.ndarray, closed: bool, color) -> None:
        pts = np.concatenate([points, points[:1]]) if closed else points
        px = (pts.real - lo[0]) / span * (size - 1)
        py = (size - 1) - (pts.imag - lo[1]) / span * (size - 1)
        for x0, y0, x1, y1 in zip(px[:-1], py[:-1], px[1:], py[1:]):
            steps = int(math.ceil(max(abs(x1 - x0), abs(y1 - y0)))) + 1
            xs = np.rint(np.linspace(x0, x1, steps)).astype(int)
            ys = np.rint(np.linspace(y0, y1, steps)).astype(int)
            ok = (xs >= 0) & (xs < size) & (ys >= 0) & (ys < size)
            canvas[ys[ok], xs[ok]] = color

    for c in curves["circles"]:
        draw(c, True, (48, 96, 160))
    for c in curves["rays"]:
        draw(c, False, (48, 96, 160))
    draw(curves["boundary"][0], True, (176, 32, 32))
    return f"P6\n{size} {size}\n255\n".encode("ascii") + canvas.tobytes()


def render(f: HarmonicMap, spec: RenderSpec) -> Path:
    curves = image_curves(f, spec)
    path = Path(spec.output_path)
    if spec.format == "svg":
        path.write_text(svg_document(curves), encoding="utf-8")
    else:
        path.write_bytes(ppm_image(curves))
    return path
