"""Regenerate the frozen catalog JSON under src/conway_doughnuts/data/catalog.

Each diagram is transcribed once as ccw-labelled triangles; gluings and
interior rings are derived from the labels.  Run from the repo root:

    python scripts/make_catalog.py
"""
from pathlib import Path

from conway_doughnuts.angleform import Shape
from conway_doughnuts.diagram import from_labelled

OUT = Path(__file__).resolve().parents[1] / "src" / "conway_doughnuts" / "data" / "catalog"


def S(*angles):
    return Shape(tuple(angles))


def T(tid, labels, *angles):
    return (tid, tuple(labels.split()), S(*angles))


BISECTOR = (2, [
    T("ABO", "A B O", "a", "b", "c + 1/4*tau"),
    T("BCO", "B C O", "b", "c", "a + 1/4*tau"),
    T("CAO", "C A O", "c", "a", "b + 1/4*tau"),
], {"figure": "Bisector Theorem", "frame": ["2*a", "2*b", "2*c"]})

MORLEY = (3, [
    T("fanA0", "A B P1", "a", "b", "c + 1/3*tau"),
    T("fanA1", "A P1 P2", "a", "b + 1/6*tau", "c + 1/6*tau"),
    T("fanA2", "A P2 C", "a", "b + 1/3*tau", "c"),
    T("fanB0", "B C Q1", "b", "c", "a + 1/3*tau"),
    T("fanB1", "B Q1 P1", "b", "c + 1/6*tau", "a + 1/6*tau"),
    T("fanC1", "C P2 Q1", "c", "a + 1/6*tau", "b + 1/6*tau"),
    T("center", "P1 Q1 P2", "1/6*tau", "1/6*tau", "1/6*tau"),
], {"figure": "Morley's Theorem", "frame": ["3*a", "3*b", "3*c"]})

_CONWAY_RING = [
    T("fanA0", "A B P1", "a", "b", "c + 3/8*tau"),
    T("fanA1", "A P1 P2", "a", "b + 1/8*tau", "c + 1/4*tau"),
    T("fanA2", "A P2 R1", "a", "b + 1/4*tau", "c + 1/8*tau"),
    T("fanB0", "B C Q1", "b", "c", "a + 3/8*tau"),
    T("fanB1", "B Q1 Q2", "b", "c + 1/8*tau", "a + 1/4*tau"),
    T("fanB2", "B Q2 P1", "b", "c + 1/4*tau", "a + 1/8*tau"),
    T("fanC0", "C A R1", "c", "a", "b + 3/8*tau"),
    T("fanC1", "C R1 R2", "c", "a + 1/8*tau", "b + 1/4*tau"),
    T("fanC2", "C R2 Q1", "c", "a + 1/4*tau", "b + 1/8*tau"),
]
_CONWAY_JUNCTIONS = [
    T("junctionA", "P1 Q2 P2", "1/4*tau", "1/8*tau", "1/8*tau"),
    T("junctionB", "Q1 R2 Q2", "1/4*tau", "1/8*tau", "1/8*tau"),
    T("junctionC", "R1 P2 R2", "1/4*tau", "1/8*tau", "1/8*tau"),
]
_CONWAY_FRAME = {"frame": ["4*a", "4*b", "4*c"]}

CONWAY = (4, _CONWAY_RING + _CONWAY_JUNCTIONS + [
    T("center", "P2 Q2 R2", "a + 1/8*tau", "b + 1/8*tau", "c + 1/8*tau"),
], {"figure": "Conway's Theorem", **_CONWAY_FRAME})

# Conway's diagram with the extra lines: each junction split along its axis
# of symmetry and the central triangle split into four by its medial triangle.
# The result is the planar map of an icosahedron (12 vertices, 20 faces).
ICOS = (4, _CONWAY_RING + [
    T("junctionA1", "P1 Q2 Mpq", "1/8*tau", "1/8*tau", "1/4*tau"),
    T("junctionA2", "P1 Mpq P2", "1/8*tau", "1/4*tau", "1/8*tau"),
    T("junctionB1", "Q1 R2 Mqr", "1/8*tau", "1/8*tau", "1/4*tau"),
    T("junctionB2", "Q1 Mqr Q2", "1/8*tau", "1/4*tau", "1/8*tau"),
    T("junctionC1", "R1 P2 Mrp", "1/8*tau", "1/8*tau", "1/4*tau"),
    T("junctionC2", "R1 Mrp R2", "1/8*tau", "1/4*tau", "1/8*tau"),
    T("centerP", "P2 Mpq Mrp", "a + 1/8*tau", "b + 1/8*tau", "c + 1/8*tau"),
    T("centerQ", "Mpq Q2 Mqr", "a + 1/8*tau", "b + 1/8*tau", "c + 1/8*tau"),
    T("centerR", "Mrp Mqr R2", "a + 1/8*tau", "b + 1/8*tau", "c + 1/8*tau"),
    T("medial", "Mqr Mrp Mpq", "a + 1/8*tau", "b + 1/8*tau", "c + 1/8*tau"),
], {"figure": "Conway's icosahedron",
    "note": "extra lines reconstructed: junction axes and the medial triangle of the centre",
    **_CONWAY_FRAME})

# Angle-bisector diagram subdivided: Conway's ring of fans, with each
# junction-plus-centre region replaced by a kite X1-Y2-I-X2 split along its
# axis X1-I.  A-P2-I, B-Q2-I, C-R2-I are then straight (the bisectors).
ICOSVAR = (4, _CONWAY_RING + [
    T("kiteP1", "P1 Q2 I", "1/8*tau", "-c + 1/4*tau", "c + 1/8*tau"),
    T("kiteP2", "P1 I P2", "1/8*tau", "c + 1/8*tau", "-c + 1/4*tau"),
    T("kiteQ1", "Q1 R2 I", "1/8*tau", "-a + 1/4*tau", "a + 1/8*tau"),
    T("kiteQ2", "Q1 I Q2", "1/8*tau", "a + 1/8*tau", "-a + 1/4*tau"),
    T("kiteR1", "R1 P2 I", "1/8*tau", "-b + 1/4*tau", "b + 1/8*tau"),
    T("kiteR2", "R1 I R2", "1/8*tau", "b + 1/8*tau", "-b + 1/4*tau"),
], {"figure": "A variation on Conway's icosahedron",
    "bisector_points": ["P2", "Q2", "R2"], "incenter_vertex": "I", **_CONWAY_FRAME})

ORTHOCENTER = (2, [
    T("ABH", "A B H", "b", "a", "c + 1/4*tau"),
    T("BCH", "B C H", "c", "b", "a + 1/4*tau"),
    T("CAH", "C A H", "a", "c", "b + 1/4*tau"),
], {"figure": "Orthocenter", "frame": ["b + c", "c + a", "a + b"]})

CIRCUMCENTER = (2, [
    T("ABO", "A B O", "c", "c", "2*a + 2*b"),
    T("BCO", "B C O", "a", "a", "2*b + 2*c"),
    T("CAO", "C A O", "b", "b", "2*c + 2*a"),
], {"figure": "Circumcenter", "frame": ["b + c", "c + a", "a + b"], "apex": "O"})

_ISO_NOTE = ("central angles chosen so that the EZ condition holds: leading angles "
             "(a', b, c) against trailing (a', c, b), with x' = x + tau/8")

ISOGONAL = (4, [
    T("ABP", "A B P", "a + 1/8*tau", "a + 1/8*tau", "-2*a + 1/4*tau"),
    T("BCP", "B C P", "b", "c", "a + 3/8*tau"),
    T("CAP", "C A P", "c", "b", "a + 3/8*tau"),
], {"figure": "Isogonal Conjugates (first diagram)", "note": _ISO_NOTE,
    "conjugate": "isogonal-conjugate"})

ISOGONAL_CONJUGATE = (4, [
    T("ABP", "A B P", "b", "b", "-2*b + 1/2*tau"),
    T("BCP", "B C P", "a + 1/8*tau", "c", "b + 1/4*tau"),
    T("CAP", "C A P", "c", "a + 1/8*tau", "b + 1/4*tau"),
], {"figure": "Isogonal Conjugates (second diagram)", "note": _ISO_NOTE,
    "conjugate": "isogonal"})

# Cyclic quadrilateral with half central angles (a', b', c', 0'), x' = x + tau/10,
# so that their sum is tau/2; xbar = tau/4 - x.
CHOPSTICKS = (5, [
    T("side1", "V1 V2 O", "-a + 3/20*tau", "-a + 3/20*tau", "2*a + 1/5*tau"),
    T("side2", "V2 V3 O", "-b + 3/20*tau", "-b + 3/20*tau", "2*b + 1/5*tau"),
    T("side3", "V3 V4 O", "-c + 3/20*tau", "-c + 3/20*tau", "2*c + 1/5*tau"),
    T("side4", "V4 V1 O", "3/20*tau", "3/20*tau", "1/5*tau"),
], {"figure": "Cyclic Quadrilateral (front)",
    "half_central_angles": ["a + 1/10*tau", "b + 1/10*tau", "c + 1/10*tau", "1/10*tau"],
    "outer": ["V1", "V2", "V3", "V4"], "back": "chopsticks-back"})

CHOPSTICKS_BACK = (5, [
    T("side1", "V1 V2 X", "b + 1/10*tau", "1/10*tau", "a + c + 1/5*tau"),
    T("side2", "V2 V3 X", "c + 1/10*tau", "a + 1/10*tau", "b + 1/5*tau"),
    T("side3", "V3 V4 X", "1/10*tau", "b + 1/10*tau", "a + c + 1/5*tau"),
    T("side4", "V4 V1 X", "a + 1/10*tau", "c + 1/10*tau", "b + 1/5*tau"),
], {"figure": "Cyclic Quadrilateral (back)",
    "half_central_angles": ["a + 1/10*tau", "b + 1/10*tau", "c + 1/10*tau", "1/10*tau"],
    "outer": ["V1", "V2", "V3", "V4"], "front": "chopsticks"})

ENTRIES = {
    "bisector": BISECTOR,
    "morley": MORLEY,
    "conway": CONWAY,
    "icos": ICOS,
    "icosvar": ICOSVAR,
    "centers-orthocenter": ORTHOCENTER,
    "centers-circumcenter": CIRCUMCENTER,
    "isogonal": ISOGONAL,
    "isogonal-conjugate": ISOGONAL_CONJUGATE,
    "chopsticks": CHOPSTICKS,
    "chopsticks-back": CHOPSTICKS_BACK,
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (n, entries, meta) in ENTRIES.items():
        spec = from_labelled(n, entries, {"name": name, **meta})
        (OUT / f"{name}.json").write_text(spec.to_json() + "\n")
        print(f"{name}: {len(spec.triangles)} triangles, {len(spec.gluings)} gluings, "
              f"{len(spec.interior_vertices)} interior vertices")


if __name__ == "__main__":
    main()
