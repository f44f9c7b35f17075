"""Exponential circle packings on the triangular lattice.

Lattice vertex ``(i, j)`` carries radius ``s**i * t**j``.  Every up triangle
``(i, j), (i+1, j), (i, j+1)`` is similar to the one with radii ``(1, s, t)``
and every down triangle ``(i+1, j), (i+1, j+1), (i, j+1)`` to ``(s, st, t)``,
so the whole patch is built from two shapes.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .angleform import TAU
from .diagram import PlacedDiagram, third_vertex
from .errors import NotRealizable


@dataclass(frozen=True)
class PackingParams:
    ratio_s: float
    ratio_t: float
    rows: int = 5
    cols: int = 5

    def __post_init__(self):
        if not (self.ratio_s > 0 and self.ratio_t > 0) or not (
                math.isfinite(self.ratio_s) and math.isfinite(self.ratio_t)):
            raise NotRealizable(f"radius ratios must be positive, got {self.ratio_s}, {self.ratio_t}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be >= 1")


def tangent_angles(r0: float, r1: float, r2: float) -> tuple[float, float, float]:
    """Angles of the triangle joining centres of three mutually tangent circles."""
    if min(r0, r1, r2) <= 0:
        raise NotRealizable(f"radii must be positive, got {(r0, r1, r2)}")
    s = r0 + r1 + r2

    def at(x, y, z):
        return 2.0 * math.atan(math.sqrt(y * z / (x * s)))

    return (at(r0, r1, r2), at(r1, r2, r0), at(r2, r0, r1))


def shapes_from_ratios(ratio_s: float, ratio_t: float):
    """The up shape (radii 1, s, t) and the down shape (radii s, st, t)."""
    if not (ratio_s > 0 and ratio_t > 0):
        raise NotRealizable(f"radius ratios must be positive, got {ratio_s}, {ratio_t}")
    s, t = ratio_s, ratio_t
    return tangent_angles(1.0, s, t), tangent_angles(s, s * t, t)


def vertex_ring(shape1, shape2):
    """The six (angles, pivot) entries met ccw around a lattice vertex."""
    return [(shape1, 0), (shape2, 0), (shape1, 1), (shape2, 1), (shape1, 2), (shape2, 2)]


def vertex_holonomy(shape1, shape2) -> tuple[float, float]:
    rotation, log_scale = 0.0, 0.0
    for angles, p in vertex_ring(shape1, shape2):
        rotation += angles[p]
        log_scale += math.log(math.sin(angles[(p + 1) % 3])) - math.log(math.sin(angles[(p - 1) % 3]))
    return rotation - TAU, log_scale


def vertex_fit_check(shape1, shape2, tol: float = 1e-10) -> bool:
    """Do the two shapes, alternating, close up around a vertex?"""
    for shape in (shape1, shape2):
        if abs(sum(shape) - TAU / 2) > tol or min(shape) <= 0:
            return False
    rotation, log_scale = vertex_holonomy(shape1, shape2)
    return abs(rotation) < tol and abs(log_scale) < tol


@dataclass
class PackingPatch:
    params: PackingParams
    centers: dict[tuple[int, int], complex]
    log_radii: dict[tuple[int, int], float]
    triangles: list[tuple[tuple[int, int], ...]]

    def radius(self, v: tuple[int, int]) -> float:
        return math.exp(self.log_radii[v])

    def circles(self) -> list[tuple[complex, float]]:
        return [(self.centers[v], self.radius(v)) for v in sorted(self.centers)]

    def edges(self):
        seen = set()
        for tri in self.triangles:
            for k in range(3):
                e = tuple(sorted((tri[k], tri[(k + 1) % 3])))
                if e not in seen:
                    seen.add(e)
                    yield e

    def tangency_residual(self) -> float:
        """Max relative mismatch between centre distance and radius sum."""
        worst = 0.0
        for u, v in self.edges():
            want = self.radius(u) + self.radius(v)
            worst = max(worst, abs(abs(self.centers[u] - self.centers[v]) - want) / want)
        return worst

    def flatness_residual(self) -> float:
        """Max |angle sum - tau| over interior lattice vertices."""
        sums: dict = {}
        counts: dict = {}
        for tri in self.triangles:
            pts = [self.centers[v] for v in tri]
            for k, v in enumerate(tri):
                p, q, r = pts[k], pts[(k + 1) % 3], pts[(k + 2) % 3]
                ang = abs(math.atan2(((q - p).conjugate() * (r - p)).imag,
                                     ((q - p).conjugate() * (r - p)).real))
                sums[v] = sums.get(v, 0.0) + ang
                counts[v] = counts.get(v, 0) + 1
        interior = [v for v, c in counts.items() if c == 6]
        return max((abs(sums[v] - TAU) for v in interior), default=0.0)

    def to_placed(self) -> PlacedDiagram:
        placements = {f"{'up' if k % 2 == 0 else 'down'}_{tri[0][0]}_{tri[0][1]}":
                      tuple(self.centers[v] for v in tri)
                      for k, tri in enumerate(self.triangles)}
        return PlacedDiagram(placements=placements, residuals=[], provenance={"packing": True})

    def circles_json(self) -> list[dict]:
        return [{"center": [c.real, c.imag], "radius": r} for c, r in self.circles()]


def develop_packing(params: PackingParams) -> PackingPatch:
    """Develop a rows x cols patch: (0, 0) at the origin, (1, 0) on the positive x-axis."""
    up, down = shapes_from_ratios(params.ratio_s, params.ratio_t)
    ls, lt = math.log(params.ratio_s), math.log(params.ratio_t)
    triangles, shapes = [], []
    for j in range(params.rows):
        for i in range(params.cols):
            triangles.append(((i, j), (i + 1, j), (i, j + 1)))
            shapes.append(up)
            triangles.append(((i + 1, j), (i + 1, j + 1), (i, j + 1)))
            shapes.append(down)
    log_radii = {v: v[0] * ls + v[1] * lt for tri in triangles for v in tri}
    centers = {(0, 0): 0j, (1, 0): complex(1.0 + params.ratio_s)}
    pending = deque(range(len(triangles)))
    stall = 0
    while pending:
        k = pending.popleft()
        tri = triangles[k]
        known = [v in centers for v in tri]
        if all(known):
            stall = 0
            continue
        for m in range(3):
            if known[m] and known[(m + 1) % 3]:
                centers[tri[(m + 2) % 3]] = third_vertex(
                    centers[tri[m]], centers[tri[(m + 1) % 3]], shapes[k], m)
                stall = 0
                break
        else:
            pending.append(k)
            stall += 1
            if stall > len(pending):
                raise RuntimeError("packing patch is not connected")
    return PackingPatch(params, centers, log_radii, triangles)
