"""Triangle diagrams whose angles are linear forms in (a, b, c).

Diagrams are built from shaped triangles, checked symbolically by the
EZ holonomy condition and numerically by laying them out in the plane.
"""
from .angleform import TAU, AngleForm, Assignment, Shape, parse_form, random_assignment
from .diagram import DiagramSpec, PlacedDiagram, catalog, develop, verify_existence
from .doughnut import build_doughnut, develop_doughnut, hole_polygon
from .errors import DoughnutError

__all__ = [
    "TAU", "AngleForm", "Assignment", "Shape", "parse_form", "random_assignment",
    "DiagramSpec", "PlacedDiagram", "catalog", "develop", "verify_existence",
    "build_doughnut", "develop_doughnut", "hole_polygon", "DoughnutError",
]
