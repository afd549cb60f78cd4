import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycenters.analysis import analyze
from polycenters.classification import Kind
from polycenters.constructors import paper_example
from polycenters.critical_points import PlanarField
from polycenters.polynomial import parse_poly
from polycenters.portrait import (
    PortraitData,
    PortraitSpec,
    StartAtCriticalPoint,
    build_portrait,
    count_ovals,
    flood_fill_ovals,
    integrate_orbit,
    level_curves,
    project,
    render,
    to_svg,
)

SVG = "{http://www.w3.org/2000/svg}"


def test_rotation_orbit_closes_on_its_circle():
    orbit = integrate_orbit(PlanarField.parse("-y", "x"), (0.5, 0.0))
    assert orbit.closed
    r = np.hypot(orbit.points[:, 0], orbit.points[:, 1])
    assert np.max(np.abs(r - 0.5)) < 1e-7
    # one lap of length pi
    assert np.sum(np.linalg.norm(np.diff(orbit.points, axis=0), axis=1)) == pytest.approx(math.pi, rel=1e-3)


def test_backward_orbit_reverses_direction():
    F = PlanarField.parse("-y", "x")
    fwd = integrate_orbit(F, (1.0, 0.0), t_span=0.5)
    bwd = integrate_orbit(F, (1.0, 0.0), t_span=0.5, backward=True)
    assert fwd.points[-1][1] > 0 > bwd.points[-1][1]


def test_orbit_escapes_for_source():
    o = integrate_orbit(PlanarField.parse("x", "y"), (0.1, 0.2), t_span=100.0, escape_radius=1e3)
    assert not o.closed
    assert np.hypot(*o.points[-1]) > 1e3
    # radial field: orbit stays on its ray
    assert np.allclose(o.points[:, 1], 2 * o.points[:, 0], rtol=1e-6)


def test_orbit_stops_at_sink():
    o = integrate_orbit(PlanarField.parse("-x", "-y"), (1.0, 0.0), t_span=1e3)
    assert np.hypot(*o.points[-1]) < 1e-6


def test_orbit_from_critical_point_raises():
    with pytest.raises(StartAtCriticalPoint):
        integrate_orbit(PlanarField.parse("-y", "x"), (0.0, 0.0))


def test_level_curves_of_circle():
    curves = level_curves(parse_poly("x^2 + y^2"), 1.0, resolution=200)
    assert len(curves) == 1 and curves[0].closed
    r = np.hypot(curves[0].points[:, 0], curves[0].points[:, 1])
    assert np.max(np.abs(r - 1)) < 1e-3


def test_level_curves_open_branches():
    curves = level_curves(parse_poly("x*y"), 1.0, resolution=200)
    assert len(curves) == 2 and not any(c.closed for c in curves)
    assert count_ovals(parse_poly("x*y"), 1.0) == 0


def test_level_curves_accept_callables_and_validate_resolution():
    assert count_ovals(lambda x, y: x**2 + 4 * y**2, 1.0) == 1
    with pytest.raises(ValueError):
        level_curves(parse_poly("x"), 0.0, resolution=4)


def test_hk_circle_ovals():
    H = parse_poly("x*y*(x^2 + y^2 - 1)")
    for lv in (1 / 16, -1 / 16):
        assert count_ovals(H, lv, (-1.5, 1.5, -1.5, 1.5)) == 2
        assert flood_fill_ovals(H, lv, (-1.5, 1.5, -1.5, 1.5), 800) == 2


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5, unique=True))
def test_oval_count_equals_number_of_disjoint_circles(centers):
    # small disjoint circles around lattice points: each is one oval of the level 0
    def h(x, y):
        out = 1.0
        for a, b in centers:
            out = out * ((x - a) ** 2 + (y - b) ** 2 - 0.09)
        return out

    bbox = (-4.0, 4.0, -4.0, 4.0)
    assert count_ovals(h, 0.0, bbox, resolution=400) == len(centers)
    assert flood_fill_ovals(h, 0.0, bbox, resolution=400) == len(centers)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_projection_lands_in_unit_disk(x, y):
    X, Y = project(x, y)
    assert X * X + Y * Y < 1
    # direction is preserved
    assert X * y == pytest.approx(Y * x, abs=1e-9 * (1 + abs(x) + abs(y)))


def _portrait(F):
    return PortraitSpec(F, analyze(F).indices, orbits_per_center=2)


def test_rotation_portrait_svg_structure():
    svg = render(_portrait(PlanarField.parse("-y", "x")))
    root = ET.fromstring(svg)
    assert root.get("viewBox") == "-1.05 -1.05 2.1 2.1"
    orbits = root.find(f"{SVG}g[@id='orbits']")
    assert len(orbits) == 2
    seps = root.find(f"{SVG}g[@id='separatrices']")
    assert len(seps) == 0
    pts = root.find(f"{SVG}g[@id='points']")
    assert [e.get("class") for e in pts] == ["center"]


def test_portrait_is_deterministic():
    F = paper_example("ex1")
    spec = _portrait(F)
    assert render(spec) == render(spec)


def test_saddle_separatrices_and_axes():
    F = PlanarField.parse("x", "-y")
    data = build_portrait(_portrait(F))
    assert len(data.separatrices) == 4
    assert data.axes
    kinds = [k for k, _, _ in data.glyphs]
    assert kinds.count(Kind.SADDLE) == 1


def test_infinite_points_drawn_on_boundary():
    data = build_portrait(_portrait(PlanarField.parse("x", "2*y")))
    boundary = [(X, Y) for _, X, Y in data.glyphs if math.hypot(X, Y) > 0.99]
    assert len(boundary) == 4


def test_y_axis_is_flipped_and_title_escaped():
    data = PortraitData(glyphs=[(Kind.CENTER, 0.5, 0.25)])
    svg = to_svg(data, 100, "a < b")
    assert 'cy="-0.25000"' in svg
    assert "<title>a &lt; b</title>" in svg


def test_spec_validation():
    with pytest.raises(ValueError):
        PortraitSpec(PlanarField.parse("-y", "x"), None, tol=0)
