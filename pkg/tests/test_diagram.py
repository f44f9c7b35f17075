import cmath

import pytest

from conway_doughnuts.angleform import Shape, equilateral_assignment, random_assignment
from conway_doughnuts.diagram import (CATALOG_NAMES, DiagramSpec, catalog, develop, from_labelled,
                                      symbolic_checks, third_vertex, verify_existence)
from conway_doughnuts.errors import (DisconnectedSpec, InvalidSpec, UnknownName,
                                     UnrealizableShape)
from conway_doughnuts import figures

COUNTS = {
    "bisector": (3, 3, 1),
    "morley": (7, 9, 3),
    "conway": (13, 18, 6),
    "icos": (19, 27, 9),
    "icosvar": (15, 21, 7),
}


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_entries_exist(name, rng):
    spec = catalog(name)
    shapes, vertices = symbolic_checks(spec)
    assert all(shapes.values()) and all(vertices)
    for _ in range(10):
        report = verify_existence(spec, random_assignment(spec.n, rng))
        assert report.exists, report.to_dict()


@pytest.mark.parametrize("name, counts", COUNTS.items())
def test_catalog_combinatorics(name, counts):
    spec = catalog(name)
    assert (len(spec.triangles), len(spec.gluings), len(spec.interior_vertices)) == counts


def test_icos_is_an_icosahedron():
    spec = catalog("icos")
    verts = {v for lab in spec.labels.values() for v in lab}
    # the outer face closes the sphere: V - E + F = 2 with F counting it
    edges = {frozenset((lab[k], lab[(k + 1) % 3])) for lab in spec.labels.values() for k in range(3)}
    assert (len(verts), len(edges), len(spec.triangles) + 1) == (12, 30, 20)


def test_unknown_name():
    with pytest.raises(UnknownName):
        catalog("escher")


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_json_round_trip(name):
    spec = catalog(name)
    again = DiagramSpec.from_json(spec.to_json())
    assert again.to_json() == spec.to_json()


def test_malformed_json():
    with pytest.raises(InvalidSpec):
        DiagramSpec.from_dict({"n": 2})


def test_inconsistent_gluing_rejected():
    spec = catalog("bisector")
    bad = spec.to_dict()
    bad["gluings"][0][1] = 5
    with pytest.raises(InvalidSpec):
        DiagramSpec.from_dict(bad).validate()


def test_orientation_clash():
    shape = Shape(("a", "b", "c + 1/4*tau"))
    with pytest.raises(InvalidSpec):
        from_labelled(2, [("t1", ("A", "B", "O"), shape), ("t2", ("A", "B", "X"), shape)])


def test_disconnected():
    shape = Shape(("a", "b", "c + 1/4*tau"))
    with pytest.raises(DisconnectedSpec):
        from_labelled(2, [("t1", ("A", "B", "O"), shape), ("t2", ("D", "E", "F"), shape)])


def test_unrealizable_shape():
    spec = from_labelled(2, [("t", ("A", "B", "O"), Shape(("a - b", "2*b", "c + 1/4*tau")))])
    from conway_doughnuts.angleform import Assignment, TAU
    with pytest.raises(UnrealizableShape):
        develop(spec, Assignment(0.1, 0.3, TAU / 4 - 0.4))


def test_third_vertex_law_of_sines():
    angles = (0.5, 1.1, cmath.pi - 1.6)
    r = third_vertex(0j, 1 + 0j, angles, 0)
    assert abs(cmath.phase(r) - 0.5) < 1e-14
    assert abs(abs(r) - cmath.sin(1.1).real / cmath.sin(angles[2]).real) < 1e-14


def test_development_is_seed_independent(rng):
    """Different seed triangles give the same figure up to similarity."""
    spec = catalog("morley")
    asg = random_assignment(3, rng)
    one = develop(spec, asg)
    two = develop(spec, asg, ("center", 2 + 1j, -1 + 0.5j))
    names = sorted(one.vertex_positions())

    def normalized(placed):
        a, b = placed.vertex("A"), placed.vertex("B")
        return [(placed.vertex(v) - a) / (b - a) for v in names]

    assert max(abs(x - y) for x, y in zip(normalized(one), normalized(two))) < 1e-12


def test_equilateral_morley_center():
    placed = develop(catalog("morley"), equilateral_assignment(3))
    p, q, r = (placed.vertex(v) for v in ("P1", "Q1", "P2"))
    assert abs(abs(p - q) - abs(q - r)) < 1e-12 and abs(abs(q - r) - abs(r - p)) < 1e-12


def test_figure_residuals(rng):
    for _ in range(20):
        assert figures.icosvar_incenter_residual(random_assignment(4, rng)) < 1e-9
        assert figures.chopsticks_concyclic_residual(random_assignment(5, rng)) < 1e-9
        assert figures.chopsticks_fit_residual(random_assignment(5, rng)) < 1e-9
        assert figures.circumcenter_double_angle_residual(random_assignment(2, rng)) < 1e-10
        assert figures.isogonal_residual(random_assignment(4, rng)) < 1e-9


def test_orthocenter_is_the_orthocenter(rng):
    spec = catalog("centers-orthocenter")
    placed = develop(spec, random_assignment(2, rng))
    h = placed.vertex("H")
    a, b, c = (placed.vertex(v) for v in "ABC")
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        # H - p is perpendicular to the opposite side q - r
        assert abs(((h - p) * (r - q).conjugate()).real) < 1e-12 * abs(r - q) ** 2 * 10
