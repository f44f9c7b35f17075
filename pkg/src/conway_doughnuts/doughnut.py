"""Conway's n-doughnuts: corner fans inside Δ(na, nb, nc) and the hole they leave.

Fan ``i`` hinges at corner ``i`` (A, B, C for i = 0, 1, 2).  Its ``k``-th
triangle has vertices ``(corner, X_k, X_{k+1})`` where ``X_0`` is the next
corner and ``X_n`` the previous one.  Consecutive fans share their extreme
triangles (the one spanning a whole side of the big triangle), so a doughnut
has ``3(n-1)`` fan triangles.  Where two fans meet at an inner point an
isosceles *junction* triangle with apex angle ``(n-2)tau/(2n)`` closes the
vertex; for n = 3 the three junctions coincide in Morley's equilateral
triangle, and for n = 2 they vanish.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .angleform import (TAU, AngleForm, Assignment, Shape, equilateral_assignment,
                        parse_form)
from .diagram import DiagramSpec, PlacedDiagram, develop, from_labelled, signed_area
from .errors import ApexCollision, BranchCutCrossing, OverlappingFans

CORNERS = ("A", "B", "C")
FAN_LETTERS = ("P", "Q", "R")
_LETTER_FORMS = (AngleForm(a=1), AngleForm(b=1), AngleForm(c=1))

MERGE_TOL = 1e-9


def _unit(n: int, k: int | Fraction) -> AngleForm:
    return AngleForm(tau=Fraction(k) / (2 * n))


def fan_label(n: int, corner: int, k: int) -> str:
    corner %= 3
    if k == 0:
        return CORNERS[(corner + 1) % 3]
    if k == n:
        return CORNERS[(corner + 2) % 3]
    if n == 2:
        return "O"
    if k == n - 1:
        return f"{FAN_LETTERS[(corner + 2) % 3]}1"
    return f"{FAN_LETTERS[corner]}{k}"


def corner_fan(n: int, corner: int = 0) -> list[Shape]:
    """The n shapes Δ(x, y + k tau/(2n), z + (n-1-k) tau/(2n)) hinged at ``corner``."""
    if n < 2:
        raise ValueError("corner fans need n >= 2")
    x, y, z = (_LETTER_FORMS[(corner + j) % 3] for j in range(3))
    return [Shape((x, y + _unit(n, k), z + _unit(n, n - 1 - k))) for k in range(n)]


def junction_shape(n: int) -> Shape:
    return Shape((_unit(n, n - 2), _unit(n, 1), _unit(n, 1)))


def big_triangle(n: int) -> Shape:
    return Shape(tuple(f * n for f in _LETTER_FORMS))


def doughnut_entries(n: int, junctions: bool = True):
    entries, corner_of = [], {}
    for i in range(3):
        shapes = corner_fan(n, i)
        for k in range(n - 1):
            tid = f"fan{CORNERS[i]}{k}"
            entries.append((tid, (CORNERS[i], fan_label(n, i, k), fan_label(n, i, k + 1)),
                            shapes[k]))
            corner_of[tid] = CORNERS[i]
    if junctions and n >= 3:
        seen = set()
        for i in range(3):
            lab = (fan_label(n, i, 1), fan_label(n, i + 1, n - 2), fan_label(n, i, 2))
            if frozenset(lab) in seen:
                continue
            seen.add(frozenset(lab))
            tid = f"junction{CORNERS[i]}"
            entries.append((tid, lab, junction_shape(n)))
            corner_of[tid] = "junction"
    return entries, corner_of


def build_doughnut(n: int, junctions: bool = True) -> DiagramSpec:
    """Diagram spec of the n-doughnut; the big triangle is its outer boundary."""
    if n < 2:
        raise ValueError("doughnuts need n >= 2")
    entries, corner_of = doughnut_entries(n, junctions)
    meta = {
        "name": f"doughnut-{n}",
        "kind": "doughnut",
        "figure": "Conway's doughnut",
        "corners": list(CORNERS),
        "frame": [str(f) for f in big_triangle(n).angles],
        "triangle_corner": corner_of,
    }
    return from_labelled(n, entries, meta)


# geometry helpers --------------------------------------------------------------

def _clip(subject: list[complex], clipper: list[complex]) -> list[complex]:
    """Sutherland-Hodgman clip of a polygon by a ccw convex polygon."""
    out = subject
    for i in range(len(clipper)):
        if not out:
            break
        p, q = clipper[i], clipper[(i + 1) % len(clipper)]
        d = q - p

        def side(z):
            return (d.conjugate() * (z - p)).imag

        inp, out = out, []
        for j in range(len(inp)):
            cur, nxt = inp[j], inp[(j + 1) % len(inp)]
            sc, sn = side(cur), side(nxt)
            if sc >= 0:
                out.append(cur)
            if (sc >= 0) != (sn >= 0):
                t = sc / (sc - sn)
                out.append(cur + t * (nxt - cur))
    return out


def polygon_area(pts) -> float:
    pts = list(pts)
    return 0.5 * sum((pts[i].conjugate() * pts[(i + 1) % len(pts)]).imag
                     for i in range(len(pts)))


def triangle_overlap(t1, t2) -> float:
    return max(polygon_area(_clip(list(t1), list(t2))), 0.0)


def max_overlap(placed: PlacedDiagram) -> tuple[float, tuple[str, str] | None]:
    items = list(placed.placements.items())
    boxes = []
    for _, tri in items:
        xs = [p.real for p in tri]
        ys = [p.imag for p in tri]
        boxes.append((min(xs), max(xs), min(ys), max(ys)))
    worst, pair = 0.0, None
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            bi, bj = boxes[i], boxes[j]
            if bi[1] <= bj[0] or bj[1] <= bi[0] or bi[3] <= bj[2] or bj[3] <= bi[2]:
                continue
            area = triangle_overlap(items[i][1], items[j][1])
            if area > worst:
                worst, pair = area, (items[i][0], items[j][0])
    return worst, pair


def check_overlaps(placed: PlacedDiagram, exc=OverlappingFans, rel: float = 1e-9) -> None:
    area, pair = max_overlap(placed)
    if area > rel * placed.diameter() ** 2:
        raise exc(f"triangles {pair} overlap with area {area:.3e}")


def develop_doughnut(spec: DiagramSpec, assignment: Assignment, check: bool = True) -> PlacedDiagram:
    """Develop with corner A at 0 and corner B at 1."""
    seed = next(t for t, lab in spec.labels.items() if lab[:2] == ["A", "B"])
    placed = develop(spec, assignment, (seed, 0j, 1 + 0j))
    if check:
        check_overlaps(placed)
    return placed


# the hole ----------------------------------------------------------------------

@dataclass
class HolePolygon:
    vertices: list[complex]
    labels: list[str]
    corner_association: list[str] = field(default_factory=list)

    @property
    def area(self) -> float:
        return polygon_area(self.vertices) if len(self.vertices) >= 3 else 0.0

    def __len__(self) -> int:
        return len(self.vertices)

    def to_list(self) -> list[list[float]]:
        return [[p.real, p.imag] for p in self.vertices]


def boundary_edges(spec: DiagramSpec) -> list[tuple[str, str, str]]:
    """Unglued directed edges ``(start, end, triangle id)`` in triangle ccw sense."""
    glued = {(g[0], g[1]) for g in spec.gluings} | {(g[2], g[3]) for g in spec.gluings}
    out = []
    for tid, lab in spec.labels.items():
        for k in range(3):
            if (tid, k) not in glued:
                out.append((lab[(k + 1) % 3], lab[(k + 2) % 3], tid))
    return out


def hole_cycle(spec: DiagramSpec) -> list[tuple[str, str, str]]:
    """Boundary edges of the hole, ordered ccw around the hole."""
    corners = set(spec.metadata.get("corners", CORNERS))
    inner = [e for e in boundary_edges(spec) if not (e[0] in corners and e[1] in corners)]
    if not inner:
        return []
    nxt = {e[0]: e for e in inner}
    if len(nxt) != len(inner):
        raise ValueError("hole boundary is not a simple cycle")
    start = min(nxt)
    cycle, cur = [], nxt[start]
    while True:
        cycle.append(cur)
        cur = nxt.get(cur[1])
        if cur is None:
            raise ValueError("hole boundary does not close")
        if cur[0] == start:
            break
    if len(cycle) != len(inner):
        raise ValueError("hole boundary has several components")
    # triangle ccw runs clockwise around the hole; reverse it
    return [(e[1], e[0], e[2]) for e in reversed(cycle)]


def big_triangle_area(placed: PlacedDiagram) -> float:
    return abs(signed_area(placed.vertex("A"), placed.vertex("B"), placed.vertex("C")))


def hole_polygon(placed: PlacedDiagram, spec: DiagramSpec, check: bool = True) -> HolePolygon:
    """Merged ccw hole polygon; empty when the hole has (numerically) no area."""
    if check:
        check_overlaps(placed)
    cycle = hole_cycle(spec)
    if not cycle:
        return HolePolygon([], [], [])
    corner_of = spec.metadata.get("triangle_corner", {})
    diam = placed.diameter()
    verts = [placed.vertex(e[0]) for e in cycle]
    labels = [e[0] for e in cycle]
    assoc = [corner_of.get(e[2], e[2]) for e in cycle]
    if abs(polygon_area(verts)) < MERGE_TOL * big_triangle_area(placed):
        return HolePolygon([], [], [])
    changed = True
    while changed and len(verts) > 3:
        changed = False
        for i in range(len(verts)):
            p, q, r = verts[i - 1], verts[i], verts[(i + 1) % len(verts)]
            coincident = abs(q - p) < MERGE_TOL * diam
            if not coincident:
                turn = abs(cmath.phase((r - q) / (q - p))) if abs(r - q) > 0 else 0.0
            if coincident or turn < MERGE_TOL:
                del verts[i], labels[i]
                # edge i-1 absorbs edge i
                del assoc[i]
                changed = True
                break
    return HolePolygon(verts, labels, assoc)


def hole_vertex_count(n: int) -> int:
    """Vertex count of the hole polygon of the junction-closed doughnut."""
    return 0 if n <= 3 else 3 * (n - 3)


# isosceles augmentation --------------------------------------------------------

def isosceles_fill(spec: DiagramSpec, beta: AngleForm | str | None = None,
                   assignment: Assignment | None = None) -> DiagramSpec:
    """Attach an inward isosceles triangle with base angles ``beta`` to every
    fan edge still facing the hole.

    ``beta`` defaults to ``tau/(2n)``, the base angle of the junction
    triangles.  Collision of the new apexes is checked at ``assignment``
    (equilateral by default).
    """
    n = spec.n
    if spec.metadata.get("kind") != "doughnut":
        raise ValueError("isosceles_fill needs a doughnut spec")
    if n < 5:
        raise ValueError("isosceles_fill needs n >= 5")
    beta = _unit(n, 1) if beta is None else (parse_form(beta) if isinstance(beta, str) else beta)
    if beta.is_zero():
        return spec
    corner_of = dict(spec.metadata["triangle_corner"])
    entries = [(t, spec.labels[t], s) for t, s in spec.triangles.items()]
    apex = AngleForm(tau=Fraction(1, 2)) - beta * 2
    for start, end, tid in hole_cycle(spec):
        if not tid.startswith("fan"):
            continue
        new_id = f"iso_{start}_{end}"
        # hole cycle runs ccw around the hole, i.e. start->end is the new triangle's edge
        entries.append((new_id, (start, end, f"T_{start}_{end}"), Shape((beta, beta, apex))))
        corner_of[new_id] = "fill"
    meta = dict(spec.metadata)
    meta.update(name=f"{spec.name}-filled", triangle_corner=corner_of, fill_beta=str(beta))
    meta.pop("labels", None)
    meta.pop("interior_vertex_labels", None)
    filled = from_labelled(n, entries, meta)
    placed = develop_doughnut(filled, assignment or equilateral_assignment(n), check=False)
    check_overlaps(placed, exc=ApexCollision)
    return filled


# asymptotics -------------------------------------------------------------------

def limit_curve(corner_angle: float, samples: int) -> list[complex]:
    """Points of Im(z^(tau/(2A))) = 1 in the sector 0 < arg z < A."""
    A = corner_angle
    if not 0 < A < TAU / 2 + 1e-15:
        raise ValueError("corner angle must lie in (0, tau/2]")
    k = TAU / (2 * A)
    out = []
    for j in range(samples):
        phi = A * (j + 0.5) / samples
        r = math.sin(k * phi) ** (-1.0 / k)
        out.append(cmath.rect(r, phi))
    return out


def limit_curve_point(corner_angle: float, phi: float) -> complex:
    k = TAU / (2 * corner_angle)
    return cmath.rect(math.sin(k * phi) ** (-1.0 / k), phi)


def distance_to_limit_curve(p: complex, corner_angle: float) -> float:
    A = corner_angle
    phis = np.linspace(0, A, 4002)[1:-1]
    k = TAU / (2 * A)
    r = np.sin(k * phis) ** (-1.0 / k)
    curve = r * np.exp(1j * phis)
    j = int(np.argmin(np.abs(curve - p)))
    lo, hi = phis[max(j - 1, 0)], phis[min(j + 1, len(phis) - 1)]

    def foot(phi):
        # (c - p) . c' vanishes at the foot of the perpendicular
        r = math.sin(k * phi) ** (-1.0 / k)
        c = cmath.rect(r, phi)
        dc = complex(-r / math.tan(k * phi), r) * cmath.exp(1j * phi)
        return ((c - p) * dc.conjugate()).real

    best = float(np.abs(curve[j] - p))
    if foot(lo) * foot(hi) < 0:
        phi = brentq(foot, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
        best = min(best, abs(limit_curve_point(A, phi) - p))
    return best


def corner_boundary_labels(n: int, corner: int) -> list[str]:
    return [fan_label(n, corner, k) for k in range(2, n - 1)]


def renormalized_boundary(n: int, assignment: Assignment, corner: int = 0,
                          spec: DiagramSpec | None = None) -> tuple[list[complex], float]:
    """Hole-boundary vertices of one fan in corner coordinates, scaled onto the limit curve.

    The corner goes to the origin with its first side along the positive real
    axis, so the fan fills the sector 0 < arg z < A and the corner bisector is
    the curve's symmetry ray.  The vertex nearest that ray is scaled onto the
    curve; the returned distance is the largest point-to-curve distance.
    """
    spec = spec or build_doughnut(n)
    placed = develop_doughnut(spec, assignment)
    x = placed.vertex(CORNERS[corner % 3])
    y = placed.vertex(CORNERS[(corner + 1) % 3])
    z = placed.vertex(CORNERS[(corner + 2) % 3])
    A = cmath.phase((z - x) / (y - x))
    rot = (y - x).conjugate() / abs(y - x)
    labels = corner_boundary_labels(n, corner)
    if not labels:
        return [], 0.0
    pts = [(placed.vertex(lab) - x) * rot for lab in labels]
    return renormalize_points(pts, A)


def renormalize_points(pts: list[complex], corner_angle: float) -> tuple[list[complex], float]:
    A = corner_angle
    k = TAU / (2 * A)
    anchor = min(pts, key=lambda p: abs(cmath.phase(p) - A / 2))
    height = (anchor ** k).imag
    lam = height ** (-1.0 / k)
    scaled = [p * lam for p in pts]
    return scaled, max(distance_to_limit_curve(p, A) for p in scaled)


def power_transform(points, exponent: float, center: complex = 0j) -> list[complex]:
    """Map ``p -> (p - center)**exponent`` on the principal branch.

    Raises BranchCutCrossing when a step between consecutive points crosses
    the negative real axis of the centred coordinates.
    """
    centred = [complex(p) - complex(center) for p in points]
    for p in centred:
        if p == 0:
            raise ValueError("a point coincides with the transform centre")
    for p, q in zip(centred, centred[1:]):
        if (p.imag >= 0) != (q.imag >= 0) and p.imag != q.imag:
            t = p.imag / (p.imag - q.imag)
            x_cross = p.real + t * (q.real - p.real)
            if x_cross < 0:
                raise BranchCutCrossing(f"segment {p} -> {q} crosses the branch cut")
    return [p ** exponent for p in centred]
