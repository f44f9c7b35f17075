import re

import pytest

from conway_doughnuts.angleform import TAU, equilateral_assignment, random_assignment
from conway_doughnuts.diagram import catalog, develop
from conway_doughnuts.doughnut import build_doughnut, develop_doughnut, hole_polygon, limit_curve
from conway_doughnuts.errors import EmptyScene
from conway_doughnuts.packing import PackingParams, develop_packing
from conway_doughnuts.render import (Layer, RenderStyle, bent_doughnut_svg, diagram_svg, flipbook,
                                     packing_svg, to_svg, triangles_layer, write_flipbook)

NUMBER = re.compile(r"-?\d+\.\d+")


def test_bisector_has_three_paths():
    spec = catalog("bisector")
    svg = diagram_svg(spec, develop(spec, equilateral_assignment(2)))
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert svg.count("<path") == 3


def test_rendering_is_deterministic(rng):
    spec = build_doughnut(6)
    asg = random_assignment(6, rng)
    first = diagram_svg(spec, develop_doughnut(spec, asg))
    second = diagram_svg(spec, develop_doughnut(spec, asg))
    assert first == second


def test_fixed_decimals_and_no_nan():
    spec = catalog("conway")
    svg = diagram_svg(spec, develop(spec, equilateral_assignment(4)))
    assert "nan" not in svg.lower()
    for m in re.finditer(r'd="([^"]+)"', svg):
        for num in NUMBER.findall(m.group(1)):
            assert len(num.split(".")[1]) == 6


def test_y_axis_is_flipped():
    layer = Layer("points", [0j, 1j])
    svg = to_svg([layer], RenderStyle(width=100, height=100, margin=0.1))
    ys = [float(y) for y in re.findall(r'cy="([-\d.]+)"', svg)]
    assert ys[0] > ys[1]


def test_hole_above_fans():
    spec = build_doughnut(5)
    placed = develop_doughnut(spec, equilateral_assignment(5))
    svg = diagram_svg(spec, placed, hole=hole_polygon(placed, spec))
    assert svg.index('class="polygon hole"') > svg.rindex('class="triangles"')


def test_shape_keyed_colors():
    spec = build_doughnut(4)
    svg = diagram_svg(spec, develop_doughnut(spec, equilateral_assignment(4)))
    fills = re.findall(r'<path d="[^"]+" fill="([^"]+)"', svg)
    junctions = [f for t, f in zip(spec.triangles, fills) if t.startswith("junction")]
    assert len(set(junctions)) == 1
    assert len(set(fills)) > 1


def test_empty_scene():
    with pytest.raises(EmptyScene):
        to_svg([])
    with pytest.raises(EmptyScene):
        to_svg([Layer("polygon", [])])


def test_style_validation():
    with pytest.raises(ValueError):
        RenderStyle(width=0)
    with pytest.raises(ValueError):
        RenderStyle(palette=())


def test_flipbook(tmp_path):
    frames, failures = flipbook(list(range(8, 1, -1)))
    assert [n for n, _ in frames] == list(range(8, 1, -1)) and not failures
    corners = set()
    for _, svg in frames:
        first = re.search(r'<path d="M ([-\d.]+,[-\d.]+) L ([-\d.]+,[-\d.]+)', svg)
        corners.add(first.groups())
    assert len(corners) == 1
    paths = write_flipbook(frames, tmp_path)
    assert [p.name for p in paths][:2] == ["frame001_n08.svg", "frame002_n07.svg"]


def test_single_morley_frame():
    frames, failures = flipbook([3], (1, 1, 1))
    assert len(frames) == 1 and not failures
    assert frames[0][1].count("<path") == 7


def test_flipbook_rejects_small_n():
    with pytest.raises(ValueError):
        flipbook([1])


def test_bent_doughnut():
    svg = bent_doughnut_svg(10, equilateral_assignment(10))
    assert svg.count("<polyline") == len(build_doughnut(10).triangles)


def test_packing_and_curves():
    patch = develop_packing(PackingParams(1.2, 0.9, 3, 3))
    svg = packing_svg(patch)
    assert svg.count("<circle") == len(patch.centers)
    curve = to_svg([Layer("polyline", [limit_curve(TAU / 4, 50)])])
    assert curve.count("<polyline") == 1


def test_labels_toggle():
    spec = catalog("morley")
    placed = develop(spec, equilateral_assignment(3))
    layer = triangles_layer(placed, spec)
    assert "<text" not in to_svg([layer])
    assert to_svg([layer], RenderStyle(labels=True)).count("<text") == 7
