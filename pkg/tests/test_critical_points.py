import math

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from polycenters.constructors import paper_example
from polycenters.critical_points import (
    PlanarField,
    certify_point,
    chart_system,
    defining_form,
    finite_critical_points,
    infinite_critical_points,
    to_chart,
)
from polycenters.errors import CommonComponent, LineAtInfinityDegenerate
from polycenters.polynomial import BiPoly, parse_poly

X, Y, U, Z = sp.symbols("x y u z")


def sym(p: BiPoly, a=X, b=Y):
    return sum((sp.Rational(c.numerator, c.denominator) * a**i * b**j for (i, j), c in p.items()), sp.Integer(0))


def sympy_real_zeros(F: PlanarField):
    sols = sp.solve([sym(F.f), sym(F.g)], [X, Y], dict=True)
    out = []
    for s in sols:
        x, y = complex(s[X]), complex(s[Y])
        if abs(x.imag) < 1e-12 and abs(y.imag) < 1e-12:
            out.append((x.real, y.real))
    return sorted(out)


def test_ex1_has_nine_points_matching_sympy():
    F = paper_example("ex1")
    ours = sorted(p.as_floats() for p in finite_critical_points(F))
    ref = sympy_real_zeros(F)
    assert len(ours) == 9
    for a, b in zip(ours, ref):
        assert a == pytest.approx(b, abs=1e-12)


def test_points_have_tiny_residual_and_jacobian():
    F = paper_example("ex2")
    for p in finite_critical_points(F):
        assert p.residual < 1e-30
        assert p.jacobian == F.jacobian_at(p.x, p.y)


def test_shared_x_coordinate_forces_reshear():
    # (0, 1) and (0, -1) share x; both must be found
    F = PlanarField.parse("x", "y^2 - 1")
    pts = [p.as_floats() for p in finite_critical_points(F)]
    assert sorted(pts) == [(0.0, -1.0), (0.0, 1.0)]


def test_multiplicity_of_tangential_intersection():
    F = PlanarField.parse("y - x^2", "y")
    (p,) = finite_critical_points(F)
    assert p.as_floats() == (0.0, 0.0)
    assert p.multiplicity == 2


def test_no_real_points():
    assert finite_critical_points(PlanarField.parse("x^2 + y^2 + 1", "x - y")) == []


def test_bound_filters_far_points():
    F = PlanarField.parse("x - 100", "y")
    assert len(finite_critical_points(F)) == 1
    assert finite_critical_points(F, bound=10) == []


def test_common_component_raises():
    with pytest.raises(CommonComponent):
        finite_critical_points(PlanarField.parse("x*(x + y)", "y*(x + y)"))


def test_constant_component_has_no_zeros():
    assert finite_critical_points(PlanarField.parse("1", "x")) == []


def test_certify_point_nondegenerate():
    F = paper_example("ex1")
    assert all(certify_point(F, p) for p in finite_critical_points(F))


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=3, unique=True),
    st.integers(1, 3),
)
def test_product_of_lines_zeros(points, k):
    # f vanishes on the vertical lines x = a, g on the horizontal lines y = b
    xs = sorted({a for a, _ in points})
    ys = sorted({b for _, b in points})
    f = BiPoly.const(k)
    for a in xs:
        f = f * BiPoly({(1, 0): 1, (0, 0): -a})
    g = BiPoly.const(1)
    for b in ys:
        g = g * BiPoly({(0, 1): 1, (0, 0): -b})
    pts = [p.as_floats() for p in finite_critical_points(PlanarField(f, g))]
    expected = [(float(a), float(b)) for a in xs for b in ys]
    assert len(pts) == len(expected)
    for want in expected:
        assert min(math.dist(got, want) for got in pts) < 1e-30


# -- infinity --------------------------------------------------------------------------------

def test_defining_form_of_ex1():
    F = paper_example("ex1")
    h = defining_form(F).to_bipoly()
    assert sym(h) == sp.expand(X * sym(F.g.homogeneous_part(3).to_bipoly()) - Y * sym(F.f.homogeneous_part(3).to_bipoly()))


def test_infinite_points_of_ex1():
    dirs = sorted((float(q.direction[0]), float(q.direction[1]), q.chart) for q in infinite_critical_points(paper_example("ex1")))
    assert dirs == [(0.0, 1.0, "U2"), (1.0, 0.0, "U1")]


def test_infinite_points_of_rotation_are_absent():
    assert infinite_critical_points(PlanarField.parse("-y", "x")) == []


def test_radial_field_degenerate_at_infinity():
    with pytest.raises(LineAtInfinityDegenerate):
        infinite_critical_points(PlanarField.parse("x", "y"))


def test_chart_system_radial_field_in_u1():
    cs = chart_system(PlanarField.parse("x", "y"), "U1")
    assert cs.field.f.is_zero()
    assert cs.field.g == parse_poly("-y")


@pytest.mark.parametrize("chart", ["U1", "U2"])
def test_chart_system_matches_symbolic_compactification(chart):
    F = paper_example("ex2")
    d = F.degree
    if chart == "U1":
        xs, ys = 1 / Z, U / Z
    else:
        xs, ys = U / Z, 1 / Z
    A = sp.expand(Z**d * sym(F.f).subs({X: xs, Y: ys}, simultaneous=True))
    B = sp.expand(Z**d * sym(F.g).subs({X: xs, Y: ys}, simultaneous=True))
    if chart == "U1":
        du, dz = B - U * A, -Z * A
    else:
        du, dz = A - U * B, -Z * B
    cs = chart_system(F, chart)
    assert sp.expand(sym(cs.field.f, U, Z) - du) == 0
    assert sp.expand(sym(cs.field.g, U, Z) - dz) == 0


def test_chart_zero_matches_infinite_point():
    F = PlanarField.parse("x^2 - y^2 + 1", "2*x*y + x")
    for q in infinite_critical_points(F):
        cs = chart_system(F, q.chart)
        u = q.chart_coordinate
        assert abs(cs.field.f(u, 0)) < 1e-40
        assert abs(cs.field.g(u, 0)) < 1e-40


def test_to_chart():
    assert to_chart("U1", 2.0, 3.0) == (1.5, 0.5)
    assert to_chart("U2", 2.0, 4.0) == (0.5, 0.25)


def test_direction_is_unit_and_oriented():
    F = PlanarField.parse("x^3", "y^3 + x^2*y")
    for q in infinite_critical_points(F):
        a, b = (float(v) for v in q.direction)
        assert math.hypot(a, b) == pytest.approx(1.0)
        assert a > 0 or (a == 0 and b > 0)
