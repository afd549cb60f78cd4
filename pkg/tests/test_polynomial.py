from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.subresultants_qq_zz import sylvester

from polycenters._mp import mpq
from polycenters.errors import ParseError
from polycenters.polynomial import (
    BiPoly,
    HomoPoly,
    UniPoly,
    count_real_roots,
    format_poly,
    from_json_terms,
    gcd,
    has_common_component,
    homo_real_linear_factors,
    parse_number,
    parse_poly,
    real_roots,
    resultant,
    squarefree_decomposition,
    to_json_terms,
    uni_gcd,
)

X, Y = sp.symbols("x y")

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def bipolys(draw, max_degree=3, max_terms=6):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_degree))
        j = draw(st.integers(0, max_degree - i))
        terms[(i, j)] = draw(small)
    return BiPoly(terms)


def to_sympy(p: BiPoly):
    return sum((sp.Rational(c.numerator, c.denominator) * X**i * Y**j for (i, j), c in p.items()), sp.Integer(0))


def uni_to_sympy(u: UniPoly, var=X):
    return sum((sp.Rational(c.numerator, c.denominator) * var**k for k, c in enumerate(u.coeffs)), sp.Integer(0))


# -- univariate ----------------------------------------------------------------------------

def test_unipoly_trailing_zeros_and_degree():
    assert UniPoly([1, 2, 0, 0]).degree == 1
    assert UniPoly([]).degree == -1
    assert UniPoly([0]).is_zero()


def test_unipoly_divmod_identity():
    a = UniPoly([1, -3, 0, 2, 5])
    b = UniPoly([2, 0, 1])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_unipoly_gcd_matches_sympy():
    a = UniPoly([-1, 0, 1]) * UniPoly([2, 1])
    b = UniPoly([-1, 1]) * UniPoly([3, 0, 1])
    g = uni_gcd(a, b)
    expect = sp.Poly(sp.gcd(uni_to_sympy(a), uni_to_sympy(b)), X).monic()
    assert uni_to_sympy(g.monic()) == expect.as_expr()


def test_squarefree_decomposition_multiplicities():
    u = UniPoly([-2, 1]) ** 3 * UniPoly([1, 0, 1]) * UniPoly([5, 1]) ** 2
    parts = {m: f.monic() for f, m in squarefree_decomposition(u)}
    assert parts[3] == UniPoly([-2, 1])
    assert parts[2] == UniPoly([5, 1])
    assert parts[1] == UniPoly([1, 0, 1])


def test_real_roots_double_root_is_exact():
    roots = real_roots(UniPoly([4, -4, 1]))
    assert len(roots) == 1
    assert roots[0].multiplicity == 2
    assert roots[0].exact == 2


def test_real_roots_against_sympy():
    u = UniPoly([-1, 0, 1]) * UniPoly([-2, 0, 1]) * UniPoly([1, 0, 1]) * UniPoly([Fraction(1, 3), 1])
    ours = [float(r.value) for r in real_roots(u)]
    ref = sorted(float(r) for r in sp.real_roots(sp.Poly(uni_to_sympy(u), X)))
    ref = sorted(set(round(v, 12) for v in ref))
    assert ours == pytest.approx(ref, abs=1e-12)
    assert count_real_roots(u) == len(ref)


def test_real_roots_isolating_intervals_contain_value():
    for r in real_roots(UniPoly([-3, 0, 0, 1, 1])):
        lo, hi = r.isolating_interval
        assert mpq(lo) <= r.value <= mpq(hi)


def test_real_roots_zero_polynomial_raises():
    with pytest.raises(ValueError):
        real_roots(UniPoly([]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_real_roots_of_products_of_linear_factors(rs):
    u = UniPoly([1])
    for r in rs:
        u = u * UniPoly([-r, 1])
    roots = real_roots(u)
    assert [r.exact for r in roots] == sorted(set(rs))
    assert {r.exact: r.multiplicity for r in roots} == {v: rs.count(v) for v in rs}


# -- bivariate ---------------------------------------------------------------------------------

def test_bipoly_basic_arithmetic():
    p = parse_poly("x^2 + 2*x*y - 3")
    q = parse_poly("y - x")
    assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))
    assert (p - p).is_zero()
    assert p.total_degree == 2
    assert p.degree_in("y") == 1
    assert p.coeff(1, 1) == 2


def test_bipoly_division_by_constant_only():
    p = parse_poly("2*x + 4")
    assert p / 2 == parse_poly("x + 2")
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        p / parse_poly("x")


def test_bipoly_evaluation_modes():
    p = parse_poly("3/4*x^2*y - 2*y + 1")
    assert p(2, 3) == Fraction(4)
    assert p(2.0, 3.0) == pytest.approx(4.0)
    assert p.float_function()(2.0, 3.0) == pytest.approx(4.0)


def test_exact_div_and_compose():
    a, b = parse_poly("x - y + 1"), parse_poly("x^2 + y")
    assert (a * b).exact_div(a) == b
    assert parse_poly("x^2 + 1").exact_div(parse_poly("x")) is None
    c = a.compose(parse_poly("x + y"), parse_poly("2*y"))
    assert c == parse_poly("x - y + 1")


def test_homogeneous_parts_and_leading_form():
    p = parse_poly("x^3 - x*y^2 + y + 7")
    lf = p.leading_form()
    assert lf.degree == 3
    assert lf.to_bipoly() == parse_poly("x^3 - x*y^2")
    assert HomoPoly.from_bipoly(lf.to_bipoly()) == lf
    assert sum((h.to_bipoly() for h in p.homogeneous_parts()), BiPoly()) == p


@settings(max_examples=80, deadline=None)
@given(bipolys(), bipolys(), bipolys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=80, deadline=None)
@given(bipolys(), bipolys())
def test_product_matches_sympy(p, q):
    assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))


@settings(max_examples=60, deadline=None)
@given(bipolys())
def test_derivative_matches_sympy(p):
    assert to_sympy(p.diff("x")) == sp.diff(to_sympy(p), X)
    assert to_sympy(p.diff("y")) == sp.diff(to_sympy(p), Y)
    assert p.integrate("y").diff("y") == p


# -- grammar -----------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "text,expected",
    [
        ("x*(1 - x^2 - 3*y^2)", "-x^3 - 3*x*y^2 + x"),
        ("2x y", "2*x*y"),
        ("(x + y)**2", "x^2 + 2*x*y + y^2"),
        ("0.5*x - 1/3", "1/2*x - 1/3"),
        ("-y", "-y"),
        ("x/2", "1/2*x"),
        ("0", "0"),
    ],
)
def test_parse_and_format(text, expected):
    assert format_poly(parse_poly(text)) == expected


def test_decimals_are_exact():
    assert parse_number("0.1") == Fraction(1, 10)
    assert parse_poly("0.1*x").coeff(1, 0) == Fraction(1, 10)


@pytest.mark.parametrize("text,col", [("x +* y", 4), ("x^", 3), ("(x + y", 7), ("x / y", 5), ("x $ y", 3)])
def test_parse_errors_report_position(text, col):
    with pytest.raises(ParseError) as err:
        parse_poly(text)
    assert err.value.line == 1
    assert err.value.column == col


def test_parse_error_line_number():
    with pytest.raises(ParseError) as err:
        parse_poly("x +\n  y ^ z")
    assert err.value.line == 2


@settings(max_examples=80, deadline=None)
@given(bipolys())
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p
    assert from_json_terms(to_json_terms(p)) == p


# -- resultants and gcd ------------------------------------------------------------------------

def test_resultant_circle_and_line():
    R = resultant(parse_poly("x^2 + y^2 - 1"), parse_poly("x - y"))
    assert R == UniPoly([-1, 0, 2])


def test_resultant_common_component_vanishes():
    c = parse_poly("x + y - 1")
    assert resultant(c * parse_poly("x"), c * parse_poly("y^2 + 1")).is_zero()


def test_resultant_sign_convention():
    # Res_y(x*y - 1, y) is the determinant of [[x, -1], [1, 0]]
    assert resultant(parse_poly("x*y - 1"), parse_poly("y")) == UniPoly([1])
    # lc(f)^3 * g(-1) = -1; sympy.resultant returns +1 here, its Sylvester determinant -1
    assert resultant(parse_poly("y + 1"), parse_poly("y^3")) == UniPoly([-1])


@settings(max_examples=40, deadline=None)
@given(bipolys(max_degree=3, max_terms=5), bipolys(max_degree=3, max_terms=5))
def test_resultant_matches_sympy(p, q):
    if p.degree_in("y") < 1 or q.degree_in("y") < 1:
        return
    ours = uni_to_sympy(resultant(p, q, "y"))
    ref = sp.expand(sylvester(to_sympy(p), to_sympy(q), Y).det())
    assert sp.expand(ours - ref) == 0


@settings(max_examples=30, deadline=None)
@given(bipolys(max_degree=2, max_terms=4), bipolys(max_degree=2, max_terms=4))
def test_resultant_in_x_matches_sympy(p, q):
    if p.degree_in("x") < 1 or q.degree_in("x") < 1:
        return
    ours = uni_to_sympy(resultant(p, q, "x"), Y)
    ref = sp.expand(sylvester(to_sympy(p), to_sympy(q), X).det())
    assert sp.expand(ours - ref) == 0


def test_gcd_examples():
    assert gcd(parse_poly("x^2 - y^2"), parse_poly("x^2 + 2*x*y + y^2")) == parse_poly("x + y")
    assert gcd(parse_poly("x*(1 - x^2 - 3*y^2)"), parse_poly("2*y*(-1 + 2*x^2 + y^2)")).is_constant()
    assert gcd(BiPoly(), parse_poly("2*x + 4")) == parse_poly("x + 2")
    assert has_common_component(parse_poly("x*y"), parse_poly("x^2 + x"))


@settings(max_examples=40, deadline=None)
@given(bipolys(2, 4), bipolys(2, 4), bipolys(2, 3))
def test_gcd_matches_sympy(a, b, c):
    p, q = a * c, b * c
    if p.is_zero() or q.is_zero():
        return
    ours = to_sympy(gcd(p, q))
    ref = sp.gcd(to_sympy(p), to_sympy(q))
    assert sp.simplify(ours / ref).is_constant()


# -- binary forms ------------------------------------------------------------------------------

def test_homo_real_linear_factors_with_x_factor():
    h = HomoPoly.from_bipoly(parse_poly("y^2*(x + y)"))
    fs = homo_real_linear_factors(h)
    got = sorted((round(float(f.direction[0]), 9), round(float(f.direction[1]), 9), f.multiplicity) for f in fs)
    s = 1 / 2**0.5
    assert got == sorted([(round(s, 9), round(-s, 9), 1), (1.0, 0.0, 2)])


def test_homo_real_linear_factors_vertical_direction():
    fs = homo_real_linear_factors(HomoPoly.from_bipoly(parse_poly("x*(x^2 + y^2)")))
    assert len(fs) == 1
    assert fs[0].slope is None and fs[0].direction == (0, 1)


def test_homo_real_linear_factors_zero_form():
    with pytest.raises(ValueError):
        homo_real_linear_factors(HomoPoly(2, [0, 0, 0]))
