"""Deterministic SVG 1.1 output for developed diagrams, holes, curves and packings."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .angleform import TAU, Assignment, assignment_from_ratios
from .diagram import DiagramSpec, PlacedDiagram
from .doughnut import (CORNERS, HolePolygon, build_doughnut, develop_doughnut, hole_polygon,
                       power_transform)
from .errors import DoughnutError, EmptyScene

DEFAULT_PALETTE = (
    "#f4d35e", "#8ecae6", "#f6a6b2", "#b8e0a8", "#cdb4db", "#ffc48c",
    "#a0c4ff", "#e9c46a", "#90be6d", "#f28482", "#84a59d", "#bdb2ff",
)


@dataclass(frozen=True)
class RenderStyle:
    stroke_width: float = 1.0
    palette: tuple[str, ...] = DEFAULT_PALETTE
    labels: bool = False
    width: int = 800
    height: int = 800
    margin: float = 0.05

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas must be strictly positive")
        if not self.palette:
            raise ValueError("palette must be nonempty")


@dataclass
class Layer:
    kind: str  # "triangles", "polygon", "polyline", "circles", "points"
    items: list
    keys: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    css: str = ""

    def points(self) -> Iterable[complex]:
        if self.kind == "circles":
            for c, r in self.items:
                yield c - complex(r, r)
                yield c + complex(r, r)
        elif self.kind in ("triangles", "polyline"):
            for poly in self.items:
                yield from poly
        else:
            yield from self.items


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite coordinate in scene")
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def scene_bounds(layers: Sequence[Layer]) -> tuple[float, float, float, float]:
    pts = [p for layer in layers for p in layer.points()]
    if not pts:
        raise EmptyScene("nothing to draw")
    xs = [p.real for p in pts]
    ys = [p.imag for p in pts]
    return min(xs), max(xs), min(ys), max(ys)


def to_svg(layers: Sequence[Layer], style: RenderStyle = RenderStyle(),
           viewport: tuple[float, float, float, float] | None = None) -> str:
    layers = [layer for layer in layers if layer.items]
    if not layers:
        raise EmptyScene("nothing to draw")
    x0, x1, y0, y1 = viewport or scene_bounds(layers)
    w, h = style.width, style.height
    span = max(x1 - x0, y1 - y0, 1e-300)
    scale = min(w, h) * (1 - 2 * style.margin) / span
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2

    def tx(p: complex) -> str:
        # y axis flipped so that mathematical ccw stays ccw on screen
        return f"{_fmt(w / 2 + (p.real - cx) * scale)},{_fmt(h / 2 - (p.imag - cy) * scale)}"

    sw = _fmt(style.stroke_width)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]
    for layer in layers:
        out.append(f'<g class="{layer.kind}{(" " + layer.css) if layer.css else ""}">')
        if layer.kind == "triangles":
            colors: dict = {}
            for i, tri in enumerate(layer.items):
                key = layer.keys[i] if i < len(layer.keys) else i
                color = colors.setdefault(key, style.palette[len(colors) % len(style.palette)])
                d = "M " + " L ".join(tx(p) for p in tri) + " Z"
                out.append(f'<path d="{d}" fill="{color}" stroke="#000000" '
                           f'stroke-width="{sw}" stroke-linejoin="round"/>')
        elif layer.kind == "polygon":
            d = "M " + " L ".join(tx(p) for p in layer.items) + " Z"
            out.append(f'<path d="{d}" fill="#ffffff" fill-opacity="0.6" stroke="#c0392b" '
                       f'stroke-width="{_fmt(2 * style.stroke_width)}"/>')
        elif layer.kind == "polyline":
            for poly in layer.items:
                pts = " ".join(tx(p) for p in poly)
                out.append(f'<polyline points="{pts}" fill="none" stroke="#1d3557" '
                           f'stroke-width="{sw}"/>')
        elif layer.kind == "circles":
            for c, r in layer.items:
                x, y = tx(c).split(",")
                out.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(r * scale)}" fill="none" '
                           f'stroke="#264653" stroke-width="{sw}"/>')
        elif layer.kind == "points":
            for p in layer.items:
                x, y = tx(p).split(",")
                out.append(f'<circle cx="{x}" cy="{y}" r="{_fmt(2 * style.stroke_width)}" '
                           f'fill="#000000"/>')
        else:
            raise ValueError(f"unknown layer kind {layer.kind!r}")
        if style.labels and layer.labels:
            anchors = list(layer.points()) if layer.kind != "triangles" else [
                sum(t) / 3 for t in layer.items]
            for text, p in zip(layer.labels, anchors):
                x, y = tx(p).split(",")
                out.append(f'<text x="{x}" y="{y}" font-size="10" text-anchor="middle" '
                           f'font-family="sans-serif">{text}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def triangles_layer(placed: PlacedDiagram, spec: DiagramSpec | None = None) -> Layer:
    ids = list(placed.placements)
    if spec is not None:
        keys = [str(spec.triangles[t].key(spec.n)) for t in ids]
    else:
        keys = [t.split("_")[0] for t in ids]
    return Layer("triangles", [placed.placements[t] for t in ids], keys=keys, labels=ids)


def hole_layer(hole: HolePolygon) -> Layer:
    return Layer("polygon", list(hole.vertices), css="hole")


def diagram_svg(spec: DiagramSpec, placed: PlacedDiagram, style: RenderStyle = RenderStyle(),
                hole: HolePolygon | None = None, extra: Sequence[Layer] = (),
                viewport=None) -> str:
    layers = [triangles_layer(placed, spec)]
    if hole is not None and len(hole):
        layers.append(hole_layer(hole))
    layers.extend(extra)
    return to_svg(layers, style, viewport)


# flip book -------------------------------------------------------------------

DEFAULT_RATIOS = (4.0, 3.0, 2.0)


def flipbook(n_values: Sequence[int], ratios: tuple[float, float, float] = DEFAULT_RATIOS,
             style: RenderStyle = RenderStyle()):
    """One frame per n with the big triangle pinned (A at 0, B at 1).

    Returns ``(frames, failures)``: ``frames`` is a list of ``(n, svg)`` in the
    requested order, ``failures`` a list of ``(n, message)``.
    """
    if any(n < 2 for n in n_values):
        raise ValueError("flip-book frames need n >= 2")
    viewport = None
    frames, failures = [], []
    for n in n_values:
        try:
            asg = assignment_from_ratios(n, ratios)
            spec = build_doughnut(n)
            placed = develop_doughnut(spec, asg)
            hole = hole_polygon(placed, spec, check=False)
            if viewport is None:
                corners = [placed.vertex(c) for c in CORNERS]
                xs = [p.real for p in corners]
                ys = [p.imag for p in corners]
                viewport = (min(xs), max(xs), min(ys), max(ys))
            frames.append((n, diagram_svg(spec, placed, style, hole, viewport=viewport)))
        except DoughnutError as exc:
            failures.append((n, str(exc)))
    return frames, failures


def write_flipbook(frames, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, (n, svg) in enumerate(frames, start=1):
        path = out_dir / f"frame{i:03d}_n{n:02d}.svg"
        path.write_text(svg)
        paths.append(path)
    return paths


# fractional power --------------------------------------------------------------

def _subdivide(tri, steps: int) -> list[complex]:
    pts = []
    for k in range(3):
        p, q = tri[k], tri[(k + 1) % 3]
        pts.extend(p + (q - p) * (j / steps) for j in range(steps))
    pts.append(tri[0])
    return pts


def bent_layers(spec: DiagramSpec, placed: PlacedDiagram, corner: int = 0,
                exponent: float | None = None, steps: int = 16) -> list[Layer]:
    """Edges of a developed doughnut raised to a fractional power about one corner.

    The corner goes to the origin with its bisector on the positive real axis,
    keeping the diagram clear of the branch cut; the default exponent
    ``(tau/2)/A`` opens the corner angle ``A`` into a straight line.
    """
    x = placed.vertex(CORNERS[corner % 3])
    y = placed.vertex(CORNERS[(corner + 1) % 3])
    z = placed.vertex(CORNERS[(corner + 2) % 3])
    A = cmath.phase((z - x) / (y - x))
    k = (TAU / 2) / A if exponent is None else exponent
    rot = cmath.exp(-1j * (cmath.phase(y - x) + A / 2))
    polys = []
    for tri in placed.placements.values():
        local = [(p - x) * rot for p in _subdivide(tri, steps)]
        # the corner itself maps to 0 for a positive exponent
        safe = [p if abs(p) > 1e-12 * placed.diameter() else None for p in local]
        mapped, run = [], []
        for p in safe:
            if p is None:
                if run:
                    mapped.extend(power_transform(run, k))
                    run = []
                mapped.append(0j)
            else:
                run.append(p)
        if run:
            mapped.extend(power_transform(run, k))
        polys.append(mapped)
    return [Layer("polyline", polys, css="bent")]


def bent_doughnut_svg(n: int, assignment: Assignment, corner: int = 0,
                      exponent: float | None = None, style: RenderStyle = RenderStyle()) -> str:
    spec = build_doughnut(n)
    placed = develop_doughnut(spec, assignment)
    return to_svg(bent_layers(spec, placed, corner, exponent), style)


def packing_svg(patch, style: RenderStyle = RenderStyle(), show_triangles: bool = True) -> str:
    layers = []
    if show_triangles:
        layers.append(triangles_layer(patch.to_placed()))
    layers.append(Layer("circles", patch.circles()))
    return to_svg(layers, style)
