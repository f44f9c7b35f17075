"""Holonomy of rings of triangles around a shared vertex.

A ring is a list of ``(shape, pivot)`` entries in counter-clockwise order
around the vertex; ``pivot`` indexes the angle of ``shape`` sitting at the
vertex.  For each entry the *leading* angle follows the pivot in ccw order and
the *trailing* angle precedes it.  Walking once around the ring, the shared
edge grows by ``sin(leading)/sin(trailing)`` per triangle (law of sines), so
the loop closes in scale iff the product of these ratios is 1.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .angleform import TAU, AngleForm, Assignment, Shape, check_assignment
from .errors import DegenerateAngle

ROTATION_TOL = 1e-10


@dataclass(frozen=True)
class RingEntry:
    shape: Shape
    pivot: int

    def __post_init__(self):
        if self.pivot not in (0, 1, 2):
            raise ValueError(f"pivot must be 0, 1 or 2, got {self.pivot}")

    @property
    def pivot_angle(self) -> AngleForm:
        return self.shape[self.pivot]

    @property
    def leading(self) -> AngleForm:
        return self.shape[self.pivot + 1]

    @property
    def trailing(self) -> AngleForm:
        return self.shape[self.pivot - 1]


Ring = Sequence[RingEntry]


def make_ring(entries) -> tuple[RingEntry, ...]:
    ring = tuple(e if isinstance(e, RingEntry) else RingEntry(*e) for e in entries)
    if not ring:
        raise ValueError("a ring needs at least one entry")
    return ring


def ez_check(ring: Ring, n: int) -> bool:
    """Symbolic EZ-Holonomy test.

    Pivot angles must sum to exactly tau and the trailing angles must be a
    permutation of the leading ones, both modulo ``a + b + c = tau/(2n)``.
    """
    ring = make_ring(ring)
    total = AngleForm()
    for e in ring:
        total = total + e.pivot_angle
    if not total.equivalent(AngleForm(tau=Fraction(1)), n):
        return False
    lead = Counter(e.leading.canonical(n) for e in ring)
    trail = Counter(e.trailing.canonical(n) for e in ring)
    return lead == trail


def _checked_value(form: AngleForm, assignment: Assignment, eps: float = 1e-12) -> float:
    v = form._value(assignment)
    if v <= eps or v >= TAU / 2 - eps:
        raise DegenerateAngle(f"angle {form} evaluates to {v!r}, outside (0, tau/2)")
    return v


def numeric_holonomy(ring: Ring, assignment: Assignment, n: int) -> tuple[float, float]:
    """Return ``(rotation, log_scale)`` of the loop around the ring.

    ``rotation`` is the pivot-angle sum reduced into [-tau/2, tau/2]; the
    scale is accumulated in log space.
    """
    ring = make_ring(ring)
    check_assignment(assignment, n)
    pivots, logs = [], []
    for e in ring:
        for i in range(3):
            _checked_value(e.shape[i], assignment)
        pivots.append(e.pivot_angle._value(assignment))
        logs.append(math.log(math.sin(e.leading._value(assignment))))
        logs.append(-math.log(math.sin(e.trailing._value(assignment))))
    rotation = math.remainder(math.fsum(pivots), TAU)
    return rotation, math.fsum(logs)


def is_trivial(holonomy: tuple[float, float], tol: float = ROTATION_TOL) -> bool:
    rotation, log_scale = holonomy
    return abs(rotation) < tol and abs(log_scale) < tol


def cyclotomic_product(n: int, theta: float, constant: float | None = None) -> float:
    k = 2.0 ** (n - 1) if constant is None else constant
    prod = 1.0
    for j in range(n):
        prod *= math.sin(theta + j * TAU / (2 * n))
    return k * prod


def cyclotomic_check(n: int, theta: float, constant: float | None = None) -> float:
    """Residual of ``sin(n t) = 2^(n-1) prod_k sin(t + k tau/(2n))``.

    ``constant`` replaces ``2^(n-1)``, which lets callers probe uniqueness.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return abs(math.sin(n * theta) - cyclotomic_product(n, theta, constant))


def corner_holonomy_check(n: int, assignment: Assignment) -> float:
    """Scale-holonomy residual at the apex of a corner fan inside Δ(na, nb, nc)."""
    check_assignment(assignment, n)
    a, b, c = assignment
    step = TAU / (2 * n)
    angles = [n * b, n * c]
    for k in range(n):
        angles += [b + k * step, c + (n - 1 - k) * step]
    for v in angles:
        if v <= 1e-12 or v >= TAU / 2 - 1e-12:
            raise DegenerateAngle(f"corner fan angle {v!r} outside (0, tau/2)")
    lhs = math.log(math.sin(n * b)) - math.log(math.sin(n * c))
    rhs = math.fsum(
        math.log(math.sin(b + k * step)) - math.log(math.sin(c + (n - 1 - k) * step))
        for k in range(n)
    )
    return abs(lhs - rhs)
