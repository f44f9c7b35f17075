"""Planar maps of shaped triangles, their numeric development, and verdicts.

Conventions: triangle vertices are listed counter-clockwise; edge ``k`` is the
edge opposite vertex ``k`` (from vertex ``k+1`` to vertex ``k+2``).  Glued
edges are traversed in opposite directions.
"""
from __future__ import annotations

import cmath
import json
import math
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .angleform import TAU, Assignment, Shape, check_assignment, shape_sum_check
from .errors import DisconnectedSpec, InvalidSpec, UnknownName, UnrealizableShape
from .holonomy import RingEntry, ez_check

Gluing = tuple[str, int, str, int]

CATALOG_NAMES = (
    "bisector",
    "morley",
    "conway",
    "icos",
    "icosvar",
    "centers-orthocenter",
    "centers-circumcenter",
    "isogonal",
    "isogonal-conjugate",
    "chopsticks",
    "chopsticks-back",
)


@dataclass(frozen=True)
class DiagramSpec:
    n: int
    triangles: Mapping[str, Shape]
    gluings: tuple[Gluing, ...]
    interior_vertices: tuple[tuple[tuple[str, int], ...], ...] = ()
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "triangles", dict(self.triangles))
        object.__setattr__(self, "gluings", tuple(tuple(g) for g in self.gluings))
        object.__setattr__(
            self, "interior_vertices",
            tuple(tuple((t, int(p)) for t, p in ring) for ring in self.interior_vertices),
        )
        object.__setattr__(self, "metadata", dict(self.metadata))

    @property
    def name(self) -> str:
        return self.metadata.get("name", "")

    @property
    def labels(self) -> dict[str, list[str]] | None:
        return self.metadata.get("labels")

    def rings(self) -> list[tuple[RingEntry, ...]]:
        return [tuple(RingEntry(self.triangles[t], p) for t, p in ring)
                for ring in self.interior_vertices]

    def validate(self) -> None:
        seen = set()
        for t1, e1, t2, e2 in self.gluings:
            for t, e in ((t1, e1), (t2, e2)):
                if t not in self.triangles:
                    raise InvalidSpec(f"gluing references unknown triangle {t!r}")
                if e not in (0, 1, 2):
                    raise InvalidSpec(f"edge index {e} out of range")
                if (t, e) in seen:
                    raise InvalidSpec(f"edge {e} of {t!r} glued twice")
                seen.add((t, e))
        glued = {frozenset(((g[0], g[1]), (g[2], g[3]))) for g in self.gluings}
        for ring in self.interior_vertices:
            for (t, i), (u, j) in zip(ring, ring[1:] + ring[:1]):
                if len(ring) == 1:
                    break
                if frozenset(((t, (i + 1) % 3), (u, (j + 2) % 3))) not in glued:
                    raise InvalidSpec(
                        f"ring entries {t}[{i}] and {u}[{j}] do not share a glued edge")
        if not self._connected():
            raise DisconnectedSpec("gluing graph is not connected")

    def _connected(self) -> bool:
        ids = list(self.triangles)
        if not ids:
            return False
        adj = _adjacency(self)
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            for _, u, _ in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(ids)

    # JSON -----------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "triangles": [{"id": t, "angles": [str(f) for f in s.angles]}
                          for t, s in self.triangles.items()],
            "gluings": [list(g) for g in self.gluings],
            "interior_vertices": [[[t, p] for t, p in ring] for ring in self.interior_vertices],
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> "DiagramSpec":
        try:
            spec = cls(
                n=int(data["n"]),
                triangles={t["id"]: Shape(tuple(t["angles"])) for t in data["triangles"]},
                gluings=tuple((g[0], int(g[1]), g[2], int(g[3])) for g in data["gluings"]),
                interior_vertices=tuple(tuple((t, int(p)) for t, p in ring)
                                        for ring in data.get("interior_vertices", [])),
                metadata=data.get("metadata", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed diagram JSON: {exc}") from exc
        return spec

    @classmethod
    def from_json(cls, text: str) -> "DiagramSpec":
        return cls.from_dict(json.loads(text))


def load_spec(path: str | Path) -> DiagramSpec:
    return DiagramSpec.from_json(Path(path).read_text())


def _adjacency(spec: DiagramSpec) -> dict[str, list[tuple[int, str, int]]]:
    """triangle -> [(own edge, neighbor, gluing index)] in gluing order."""
    adj: dict[str, list] = {t: [] for t in spec.triangles}
    for gi, (t1, e1, t2, e2) in enumerate(spec.gluings):
        adj[t1].append((e1, t2, gi))
        adj[t2].append((e2, t1, gi))
    return adj


def from_labelled(n: int, entries: Iterable[tuple[str, Sequence[str], Shape]],
                  metadata: Mapping | None = None) -> DiagramSpec:
    """Build a spec from triangles given by ccw vertex labels.

    Gluings are every pair of oppositely directed edges; interior vertices are
    the labels whose incident triangles close up into a full ccw cycle.
    """
    entries = [(tid, tuple(lab), shape if isinstance(shape, Shape) else Shape(tuple(shape)))
               for tid, lab, shape in entries]
    directed: dict[tuple[str, str], tuple[str, int]] = {}
    for tid, lab, _ in entries:
        if len(set(lab)) != 3:
            raise InvalidSpec(f"triangle {tid!r} repeats a vertex label: {lab}")
        for k in range(3):
            key = (lab[(k + 1) % 3], lab[(k + 2) % 3])
            if key in directed:
                raise InvalidSpec(f"directed edge {key} used twice (orientation clash)")
            directed[key] = (tid, k)
    gluings = []
    for (u, v), (tid, k) in directed.items():
        other = directed.get((v, u))
        if other is not None and (tid, k) < other:
            gluings.append((tid, k, other[0], other[1]))
    order = {tid: i for i, (tid, _, _) in enumerate(entries)}
    gluings.sort(key=lambda g: (order[g[0]], g[1]))

    # ring walk: next ccw triangle around v shares the edge (v, previous vertex)
    incident: dict[str, list[tuple[str, int]]] = {}
    labels = {tid: lab for tid, lab, _ in entries}
    for tid, lab, _ in entries:
        for i, v in enumerate(lab):
            incident.setdefault(v, []).append((tid, i))
    rings = []
    vertex_names = []
    for v, inc in incident.items():
        start = min(inc, key=lambda e: order[e[0]])
        ring = [start]
        tid, i = start
        closed = False
        while True:
            prev_label = labels[tid][(i - 1) % 3]
            nxt = directed.get((v, prev_label))
            if nxt is None:
                break
            tid2, k2 = nxt
            j = (k2 + 1) % 3  # edge k2 runs v_{k2+1} -> v_{k2+2}; v is its start
            if (tid2, j) == start:
                closed = True
                break
            ring.append((tid2, j))
            tid, i = tid2, j
            if len(ring) > len(inc):
                raise InvalidSpec(f"ring around {v!r} does not close consistently")
        if closed and len(ring) == len(inc):
            rings.append(tuple(ring))
            vertex_names.append(v)
    meta = dict(metadata or {})
    meta["labels"] = {tid: list(lab) for tid, lab, _ in entries}
    meta["interior_vertex_labels"] = vertex_names
    spec = DiagramSpec(
        n=n,
        triangles={tid: shape for tid, _, shape in entries},
        gluings=tuple(gluings),
        interior_vertices=tuple(rings),
        metadata=meta,
    )
    spec.validate()
    return spec


# development ----------------------------------------------------------------

def third_vertex(p_i: complex, p_next: complex, angles: Sequence[float], i: int) -> complex:
    """Position of vertex ``i+2`` from vertices ``i`` and ``i+1`` (law of sines)."""
    a_i, a_next, a_third = angles[i % 3], angles[(i + 1) % 3], angles[(i + 2) % 3]
    return p_i + (p_next - p_i) * (math.sin(a_next) / math.sin(a_third)) * cmath.exp(1j * a_i)


def place_triangle(angles: Sequence[float], i: int, p_i: complex, p_next: complex):
    pts = [0j, 0j, 0j]
    pts[i % 3] = p_i
    pts[(i + 1) % 3] = p_next
    pts[(i + 2) % 3] = third_vertex(p_i, p_next, angles, i)
    return tuple(pts)


def signed_area(p0: complex, p1: complex, p2: complex) -> float:
    return 0.5 * ((p1 - p0).conjugate() * (p2 - p0)).imag


@dataclass
class PlacedDiagram:
    placements: dict[str, tuple[complex, complex, complex]]
    residuals: list[float]
    provenance: dict
    angles: dict[str, tuple[float, float, float]] = field(default_factory=dict)
    labels: dict[str, list[str]] | None = None

    def points(self) -> list[complex]:
        return [p for tri in self.placements.values() for p in tri]

    def diameter(self) -> float:
        """Bounding-box diagonal."""
        pts = self.points()
        xs = [p.real for p in pts]
        ys = [p.imag for p in pts]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def normalized_residual(self) -> float:
        return self.max_residual / self.diameter()

    def vertex(self, label: str) -> complex:
        """Mean position of every copy of a labelled vertex."""
        if self.labels is None:
            raise KeyError("diagram has no vertex labels")
        hits = [self.placements[t][i] for t, lab in self.labels.items()
                for i, v in enumerate(lab) if v == label]
        if not hits:
            raise KeyError(label)
        return sum(hits) / len(hits)

    def vertex_positions(self) -> dict[str, complex]:
        names = {v for lab in (self.labels or {}).values() for v in lab}
        return {v: self.vertex(v) for v in sorted(names)}

    def to_dict(self) -> dict:
        return {
            "placements": {t: [[p.real, p.imag] for p in tri]
                           for t, tri in self.placements.items()},
            "residuals": list(self.residuals),
            "provenance": self.provenance,
        }


def evaluate_spec(spec: DiagramSpec, assignment: Assignment) -> dict[str, tuple[float, float, float]]:
    check_assignment(assignment, spec.n)
    out = {}
    for tid, shape in spec.triangles.items():
        vals = tuple(f._value(assignment) for f in shape.angles)
        if any(v <= 1e-12 or v >= TAU / 2 - 1e-12 for v in vals):
            raise UnrealizableShape(
                f"triangle {tid} {shape} has angles {vals} outside (0, tau/2)")
        out[tid] = vals
    return out


def develop(spec: DiagramSpec, assignment: Assignment,
            seed_pose: tuple[str, complex, complex] | None = None) -> PlacedDiagram:
    """Lay the triangles in the plane by breadth-first gluing from a seed."""
    angles = evaluate_spec(spec, assignment)
    if not spec._connected():
        raise DisconnectedSpec("gluing graph is not connected")
    if seed_pose is None:
        seed_pose = (next(iter(spec.triangles)), 0j, 1 + 0j)
    seed, p0, p1 = seed_pose
    placements = {seed: place_triangle(angles[seed], 0, complex(p0), complex(p1))}
    adj = _adjacency(spec)
    queue = deque([seed])
    while queue:
        t = queue.popleft()
        for e, u, gi in adj[t]:
            if u in placements:
                continue
            g = spec.gluings[gi]
            m = g[3] if g[0] == t and g[1] == e else g[1]
            tp = placements[t]
            # u's vertex m+1 sits on t's vertex e+2, u's vertex m+2 on t's vertex e+1
            placements[u] = place_triangle(angles[u], m + 1, tp[(e + 2) % 3], tp[(e + 1) % 3])
            queue.append(u)
    residuals = []
    for t1, e1, t2, e2 in spec.gluings:
        x, y = placements[t1], placements[t2]
        residuals.append(max(abs(x[(e1 + 1) % 3] - y[(e2 + 2) % 3]),
                             abs(x[(e1 + 2) % 3] - y[(e2 + 1) % 3])))
    ordered = {t: placements[t] for t in spec.triangles}
    return PlacedDiagram(
        placements=ordered,
        residuals=residuals,
        provenance={"seed": seed, "pose": [[complex(p0).real, complex(p0).imag],
                                           [complex(p1).real, complex(p1).imag]]},
        angles=angles,
        labels=spec.labels,
    )


@dataclass
class ExistenceReport:
    name: str
    shape_checks: dict[str, bool]
    vertex_checks: list[bool]
    normalized_residual: float
    tolerance: float
    nondegenerate: bool

    @property
    def symbolic_ok(self) -> bool:
        return all(self.shape_checks.values()) and all(self.vertex_checks)

    @property
    def numeric_ok(self) -> bool:
        return self.normalized_residual < self.tolerance and self.nondegenerate

    @property
    def exists(self) -> bool:
        return self.symbolic_ok and self.numeric_ok

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "exists": self.exists,
            "symbolic_ok": self.symbolic_ok,
            "shape_checks": self.shape_checks,
            "vertex_checks": self.vertex_checks,
            "normalized_residual": self.normalized_residual,
            "tolerance": self.tolerance,
        }


def symbolic_checks(spec: DiagramSpec) -> tuple[dict[str, bool], list[bool]]:
    shapes = {t: shape_sum_check(s, spec.n) for t, s in spec.triangles.items()}
    return shapes, [ez_check(r, spec.n) for r in spec.rings()]


def verify_existence(spec: DiagramSpec, assignment: Assignment, tolerance: float = 1e-9,
                     placed: PlacedDiagram | None = None) -> ExistenceReport:
    shapes, vertices = symbolic_checks(spec)
    if placed is None:
        placed = develop(spec, assignment)
    scale = placed.diameter() ** 2
    nondeg = all(signed_area(*tri) > 1e-12 * scale for tri in placed.placements.values())
    return ExistenceReport(spec.name, shapes, vertices, placed.normalized_residual,
                           tolerance, nondeg)


def catalog(name: str) -> DiagramSpec:
    if name not in CATALOG_NAMES:
        raise UnknownName(f"unknown catalog diagram {name!r}; known: {', '.join(CATALOG_NAMES)}")
    text = resources.files("conway_doughnuts").joinpath("data", "catalog", f"{name}.json").read_text()
    spec = DiagramSpec.from_json(text)
    spec.validate()
    return spec
