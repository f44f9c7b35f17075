"""Exhaustive search for hole fills whose angles are bounded linear forms.

A candidate is a triangulation of the hole polygon together with one angle
form per fill-triangle corner.  Forms have integer coefficients of ``a, b, c``
in ``[-M, M]`` and a tau coefficient ``s/(2n)`` with ``|s| <= M``.

Gluing a fill triangle onto the hole pins its vertices, so a candidate can
only close numerically if every corner form equals the actual corner angle of
the developed hole.  The search therefore fits each corner angle over a box of
sample assignments, keeps the bounded forms that reproduce it, and only then
runs the exact shape-sum and EZ checks and a fresh numeric development.  The
candidate space is never materialized, but it is decided in full.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .angleform import TAU, AngleForm, Shape, random_assignment, shape_sum_check
from .diagram import from_labelled, signed_area
from .doughnut import build_doughnut, develop_doughnut, doughnut_entries, hole_polygon
from .errors import HoleAbsent
from .holonomy import ez_check

POLICIES = ("no-interior-vertex", "single-interior-vertex")
CENTER_LABEL = "X"
FIT_TOL = 1e-9
LATTICE_TOL = 1e-6


@dataclass(frozen=True)
class SearchBounds:
    max_numerator: int = 4
    max_fill_triangles: int = 4
    triangulation_policy: str = "no-interior-vertex"
    samples: int = 20
    closure_trials: int = 10

    def __post_init__(self):
        if self.max_numerator < 1 or self.max_fill_triangles < 1:
            raise ValueError("search bounds must be positive")
        if self.samples < 4 or self.closure_trials < 1:
            raise ValueError("need at least 4 samples and 1 closure trial")
        if self.triangulation_policy not in POLICIES:
            raise ValueError(f"unknown triangulation policy {self.triangulation_policy!r}")

    def forms_per_corner(self) -> int:
        return (2 * self.max_numerator + 1) ** 4


@dataclass(frozen=True)
class Triangulation:
    """Triangles as ccw index triples into the hole polygon; index ``k`` is the centre."""
    triangles: tuple[tuple[int, int, int], ...]
    center: bool = False


@dataclass
class SearchResult:
    n: int
    bounds: SearchBounds
    solutions: list[dict] = field(default_factory=list)
    candidates_examined: int = 0
    triangulations_examined: int = 0
    cursor: tuple[int, int] = (0, 0)
    hole_labels: list[str] = field(default_factory=list)

    @property
    def exhaustive(self) -> bool:
        return self.cursor[1] >= self.cursor[0]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "bounds": asdict(self.bounds),
            "hole_labels": self.hole_labels,
            "cursor": list(self.cursor),
            "triangulations_examined": self.triangulations_examined,
            "candidates_examined": str(self.candidates_examined),
            "solution_count": len(self.solutions),
            "solutions": self.solutions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# triangulations ----------------------------------------------------------------

def _polygon_triangulations(idx: tuple[int, ...]):
    if len(idx) < 3:
        yield ()
        return
    i, j = idx[0], idx[-1]
    for m in range(1, len(idx) - 1):
        for left in _polygon_triangulations(idx[:m + 1]):
            for right in _polygon_triangulations(idx[m:]):
                yield left + ((i, idx[m], j),) + right


def enumerate_hole_triangulations(hole_vertex_count: int,
                                  policy: str = "no-interior-vertex") -> list[Triangulation]:
    if hole_vertex_count < 3:
        raise ValueError("a hole polygon has at least 3 vertices")
    if policy not in POLICIES:
        raise ValueError(f"unknown triangulation policy {policy!r}")
    k = hole_vertex_count
    out = [Triangulation(t) for t in _polygon_triangulations(tuple(range(k)))]
    if policy == "single-interior-vertex":
        out.append(Triangulation(tuple((i, (i + 1) % k, k) for i in range(k)), center=True))
    return out


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def analytic_candidate_count(n: int, bounds: SearchBounds, start: int = 0,
                             stop: int | None = None) -> int:
    """Size of the (triangulation, corner-form tuple) space in a cursor slice."""
    k = _hole_size(n)
    tris = enumerate_hole_triangulations(k, bounds.triangulation_policy)[start:stop]
    f = bounds.forms_per_corner()
    return sum(f ** (3 * len(t.triangles)) for t in tris
               if len(t.triangles) <= bounds.max_fill_triangles)


# bounded forms -----------------------------------------------------------------

class FormTable:
    """Bounded forms keyed by their canonical coefficients ``(p, q, 2n * tau)``.

    Each key maps to the representative with the smallest coefficient sum.
    """

    def __init__(self, n: int, max_numerator: int):
        self.n = n
        m = max_numerator
        rng = range(-m, m + 1)
        best: dict[tuple[int, int, int], tuple] = {}
        for p, q, r, s in itertools.product(rng, repeat=4):
            key = (p - r, q - r, s + r)
            rank = (abs(p) + abs(q) + abs(r) + abs(s), abs(r), -r, -p, -q)
            if key not in best or rank < best[key][0]:
                best[key] = (rank, (p, q, r, s))
        self.reps = {key: AngleForm(p, q, r, Fraction(s, 2 * n))
                     for key, (_, (p, q, r, s)) in best.items()}
        self.keys = sorted(self.reps)

    def values(self, design: np.ndarray) -> np.ndarray:
        """Values of every key over the sample design, shape (keys, samples)."""
        k = np.array(self.keys, dtype=float)
        coef = np.column_stack([k[:, 0], k[:, 1], k[:, 2] / (2 * self.n)])
        return coef @ design.T

    def lookup(self, coef) -> AngleForm | None:
        p, q, t = coef
        key = (round(p), round(q), round(t * 2 * self.n))
        if (abs(p - key[0]) > LATTICE_TOL or abs(q - key[1]) > LATTICE_TOL
                or abs(t * 2 * self.n - key[2]) > LATTICE_TOL):
            return None
        return self.reps.get(key)


class _Fitter:
    """Least-squares fit of sampled angles against ``p*a + q*b + t*tau``."""

    def __init__(self, design: np.ndarray):
        self.design = design
        self.pinv = np.linalg.pinv(design)

    def fit(self, angles: np.ndarray):
        """``angles`` has samples on the last axis; returns (coef, max residual)."""
        coef = angles @ self.pinv.T
        resid = np.abs(angles - coef @ self.design.T).max(axis=-1)
        return coef, resid


# search ------------------------------------------------------------------------

def _hole_size(n: int) -> int:
    if n <= 3:
        raise HoleAbsent(f"the {n}-doughnut has no hole to fill")
    return 3 * (n - 3)


def _ccw_angle(at: np.ndarray, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Angle at ``at`` turning ccw from ``p`` to ``q``; nan where degenerate."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.angle((q - at) / (p - at))


def _sample_hole(n: int, assignments):
    spec = build_doughnut(n)
    labels = None
    rows = []
    for asg in assignments:
        placed = develop_doughnut(spec, asg, check=False)
        hole = hole_polygon(placed, spec, check=False)
        if labels is None:
            labels = hole.labels
        elif hole.labels != labels:
            raise RuntimeError("hole polygon changed combinatorics across samples")
        rows.append(hole.vertices)
    return labels, np.array(rows).T  # (vertices, samples)


def _fill_entries(labels, tri: Triangulation, forms):
    names = list(labels) + [CENTER_LABEL]
    out = []
    for j, (u, v, w) in enumerate(tri.triangles):
        out.append((f"fill{j}", (names[u], names[v], names[w]),
                    Shape(tuple(forms[3 * j:3 * j + 3]))))
    return out


def _verify(n, labels, tri, forms, trials) -> dict | None:
    entries, _ = doughnut_entries(n)
    fill = _fill_entries(labels, tri, forms)
    if not all(shape_sum_check(shape, n) for _, _, shape in fill):
        return None
    spec = from_labelled(n, entries + fill, {"name": f"doughnut-{n}-filled",
                                             "corners": ["A", "B", "C"]})
    interior = set(spec.metadata["interior_vertex_labels"])
    needed = set(labels) | ({CENTER_LABEL} if tri.center else set())
    if not needed <= interior:
        return None
    if not all(ez_check(ring, n) for ring in spec.rings()):
        return None
    worst = 0.0
    for asg in trials:
        placed = develop_doughnut(spec, asg, check=False)
        scale = placed.diameter() ** 2
        if any(signed_area(*placed.placements[t]) <= 1e-12 * scale for t, _, _ in fill):
            return None
        worst = max(worst, placed.normalized_residual)
    if worst >= FIT_TOL:
        return None
    return {
        "triangles": [list(lab) for _, lab, _ in fill],
        "shapes": [[str(f) for f in shape.angles] for _, _, shape in fill],
        "canonical": [[[str(x) for x in f.canonical(n)] for f in shape.angles]
                      for _, _, shape in fill],
        "center": tri.center,
        "max_residual": worst,
    }


def _fit_corners(tri, pts, fitter, table):
    """Bounded forms for every corner of a fixed-vertex triangulation, or None."""
    forms = []
    for j, (u, v, w) in enumerate(tri.triangles):
        P, Q, R = pts[u], pts[v], pts[w]
        if np.any(np.imag(np.conj(Q - P) * (R - P)) <= 0):
            return None  # reflected or degenerate somewhere on the box
        for at, x, y in ((P, Q, R), (Q, R, P), (R, P, Q)):
            coef, resid = fitter.fit(_ccw_angle(at, x, y))
            if resid > FIT_TOL:
                return None
            form = table.lookup(coef)
            if form is None:
                return None
            forms.append(form)
    return forms


def _fan_solutions(tri, pts, fitter, table, design):
    """Corner-form tuples for the centre fan; the centre is free, so the two
    base angles on the first edge are enumerated and the rest is fitted."""
    k = len(tri.triangles)
    vals = table.values(design)
    ok = ((vals > 1e-12) & (vals < TAU / 2 - 1e-12)).all(axis=1)
    keys = [key for key, good in zip(table.keys, ok) if good]
    vals = vals[ok]
    v0, v1 = pts[0], pts[1]
    found = []
    for i, key_a in enumerate(keys):
        alpha = vals[i]
        gamma = TAU / 2 - alpha - vals
        sel = np.nonzero((gamma > 1e-12).all(axis=1))[0]
        if not len(sel):
            continue
        beta = vals[sel]
        x = v0 + (v1 - v0) * np.sin(beta) / np.sin(alpha + beta) * np.exp(1j * alpha)
        corner_forms = [[table.reps[key_a]] * len(sel), [table.reps[keys[s]] for s in sel]]
        gamma_coef, _ = fitter.fit(gamma[sel])
        g_forms = [table.lookup(c) for c in gamma_coef]
        keep = np.array([g is not None for g in g_forms])
        corner_forms.append(g_forms)
        for j in range(1, k):
            if not keep.any():
                break
            P, Q = pts[j], pts[(j + 1) % k]
            for at, p, q in ((P, Q, x), (Q, x, P), (x, P, Q)):
                ang = _ccw_angle(np.broadcast_to(at, x.shape), np.broadcast_to(p, x.shape),
                                 np.broadcast_to(q, x.shape))
                coef, resid = fitter.fit(ang)
                good = (resid < FIT_TOL) & (ang > 0).all(axis=1) & keep
                col = [table.lookup(c) if g else None for c, g in zip(coef, good)]
                keep &= np.array([f is not None for f in col])
                corner_forms.append(col)
        for row in np.nonzero(keep)[0]:
            found.append([col[row] for col in corner_forms])
    return found


def search_hole_fill(n: int, bounds: SearchBounds = SearchBounds(), start: int = 0,
                     stop: int | None = None, seed: int = 0) -> SearchResult:
    """Search triangulations ``start <= index < stop`` of the n-doughnut hole.

    Solutions come out in cursor order, so slices can be merged with
    :func:`merge_results`.
    """
    k = _hole_size(n)
    tris = enumerate_hole_triangulations(k, bounds.triangulation_policy)
    stop = len(tris) if stop is None else min(stop, len(tris))
    start = max(0, start)
    rng = np.random.default_rng(seed)
    box = [random_assignment(n, rng) for _ in range(bounds.samples)]
    trials = [random_assignment(n, rng) for _ in range(bounds.closure_trials)]
    labels, pts = _sample_hole(n, box)
    if len(labels) != k:
        raise RuntimeError(f"expected {k} hole vertices, found {len(labels)}")
    design = np.array([[asg.a, asg.b, TAU] for asg in box])
    fitter = _Fitter(design)
    table = FormTable(n, bounds.max_numerator)
    result = SearchResult(n, bounds, cursor=(start, stop), hole_labels=list(labels))
    per_corner = bounds.forms_per_corner()
    for index in range(start, stop):
        tri = tris[index]
        if len(tri.triangles) > bounds.max_fill_triangles:
            continue
        result.triangulations_examined += 1
        result.candidates_examined += per_corner ** (3 * len(tri.triangles))
        if tri.center:
            tuples = _fan_solutions(tri, pts, fitter, table, design)
        else:
            forms = _fit_corners(tri, pts, fitter, table)
            tuples = [] if forms is None else [forms]
        for forms in tuples:
            sol = _verify(n, labels, tri, forms, trials)
            if sol is not None:
                sol["triangulation"] = index
                result.solutions.append(sol)
    return result


def merge_results(parts: list[SearchResult]) -> SearchResult:
    """Concatenate cursor slices; they must tile a contiguous range."""
    parts = sorted(parts, key=lambda r: r.cursor)
    first = parts[0]
    for prev, nxt in zip(parts, parts[1:]):
        if prev.cursor[1] != nxt.cursor[0] or (prev.n, prev.bounds) != (nxt.n, nxt.bounds):
            raise ValueError("search slices do not tile a contiguous cursor range")
    merged = SearchResult(first.n, first.bounds, cursor=(first.cursor[0], parts[-1].cursor[1]),
                          hole_labels=first.hole_labels)
    for part in parts:
        merged.solutions.extend(part.solutions)
        merged.candidates_examined += part.candidates_examined
        merged.triangulations_examined += part.triangulations_examined
    return merged


def solution_keys(result: SearchResult) -> set:
    """Solutions as hashable canonical keys, for comparing searches at different bounds."""
    return {(s["triangulation"], json.dumps(s["canonical"])) for s in result.solutions}


def triangulation_count(n: int, policy: str = "no-interior-vertex") -> int:
    return len(enumerate_hole_triangulations(_hole_size(n), policy))


def search_parallel(n: int, bounds: SearchBounds = SearchBounds(), workers: int = 2,
                    seed: int = 0) -> SearchResult:
    """Run disjoint cursor slices in worker processes and merge in cursor order."""
    from concurrent.futures import ProcessPoolExecutor

    total = triangulation_count(n, bounds.triangulation_policy)
    cuts = sorted({round(i * total / workers) for i in range(workers + 1)})
    slices = list(zip(cuts, cuts[1:]))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(search_hole_fill, n, bounds, lo, hi, seed) for lo, hi in slices]
        return merge_results([f.result() for f in futures])
