"""Geometric side claims attached to individual catalog diagrams."""
from __future__ import annotations

import cmath
import math

from .angleform import Assignment, parse_form
from .diagram import PlacedDiagram, catalog, develop


def circumcenter(p: complex, q: complex, r: complex) -> complex:
    d = 2 * (p.real * (q.imag - r.imag) + q.real * (r.imag - p.imag) + r.real * (p.imag - q.imag))
    ux = (abs(p) ** 2 * (q.imag - r.imag) + abs(q) ** 2 * (r.imag - p.imag)
          + abs(r) ** 2 * (p.imag - q.imag)) / d
    uy = (abs(p) ** 2 * (r.real - q.real) + abs(q) ** 2 * (p.real - r.real)
          + abs(r) ** 2 * (q.real - p.real)) / d
    return complex(ux, uy)


def incenter(p: complex, q: complex, r: complex) -> complex:
    la, lb, lc = abs(q - r), abs(r - p), abs(p - q)
    return (la * p + lb * q + lc * r) / (la + lb + lc)


def angle_at(vertex: complex, p: complex, q: complex) -> float:
    """Unsigned angle p-vertex-q."""
    return abs(cmath.phase((q - vertex) / (p - vertex)))


def icosvar_incenter_residual(assignment: Assignment, placed: PlacedDiagram | None = None) -> float:
    """Distance between the circumcentre of the three bisector points and the
    incentre of the big triangle, relative to the diagram diameter."""
    spec = catalog("icosvar")
    placed = placed or develop(spec, assignment)
    pts = [placed.vertex(v) for v in spec.metadata["bisector_points"]]
    cc = circumcenter(*pts)
    ic = incenter(placed.vertex("A"), placed.vertex("B"), placed.vertex("C"))
    return abs(cc - ic) / placed.diameter()


def chopsticks_concyclic_residual(assignment: Assignment) -> float:
    """How far the fourth outer vertex of the front is from the circle
    through the other three, relative to the diameter."""
    spec = catalog("chopsticks")
    placed = develop(spec, assignment)
    v = [placed.vertex(x) for x in spec.metadata["outer"]]
    o = circumcenter(v[0], v[1], v[2])
    return abs(abs(v[3] - o) - abs(v[0] - o)) / placed.diameter()


def chopsticks_fit_residual(assignment: Assignment) -> float:
    """Front and back side ratios against sin of the half central angles."""
    out = 0.0
    sides = {}
    for name in ("chopsticks", "chopsticks-back"):
        spec = catalog(name)
        placed = develop(spec, assignment)
        v = [placed.vertex(x) for x in spec.metadata["outer"]]
        sides[name] = [abs(v[(i + 1) % 4] - v[i]) for i in range(4)]
    halves = [parse_form(f)._value(assignment)
              for f in catalog("chopsticks").metadata["half_central_angles"]]
    for i in range(1, 4):
        target = math.sin(halves[i]) / math.sin(halves[0])
        for name in sides:
            out = max(out, abs(sides[name][i] / sides[name][0] - target))
    return out


def circumcenter_double_angle_residual(assignment: Assignment) -> float:
    """Max |angle(edge at apex) - 2 * angle(edge at opposite vertex)|."""
    spec = catalog("centers-circumcenter")
    placed = develop(spec, assignment)
    o = placed.vertex(spec.metadata["apex"])
    a, b, c = (placed.vertex(x) for x in "ABC")
    worst = 0.0
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        worst = max(worst, abs(angle_at(o, p, q) - 2 * angle_at(r, p, q)))
    return worst


def isogonal_residual(assignment: Assignment) -> float:
    """Corner angles of the two isogonal diagrams swap: the angle from side XY
    to the cevian in the first equals the angle from side XZ in the second."""
    first, second = (develop(catalog(name), assignment)
                     for name in ("isogonal", "isogonal-conjugate"))
    worst = 0.0
    for x, y, z in ("ABC", "BCA", "CAB"):
        one = angle_at(first.vertex(x), first.vertex(y), first.vertex("P"))
        two = angle_at(second.vertex(x), second.vertex(z), second.vertex("P"))
        worst = max(worst, abs(one - two))
    return worst
