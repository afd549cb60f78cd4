from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polycenters.config import Configuration
from polycenters.constructors import paper_example
from polycenters.critical_points import PlanarField
from polycenters.errors import Inconsistent, InvalidSpec
from polycenters.kolmogorov import (
    KolmogorovCubic,
    NotPolynomialCase,
    WrongCase,
    aleph_membership,
    build_first_integral,
    configuration_of,
    derive_alpha_beta,
    derive_exponents,
    desingularize_log,
    first_integral_of,
    verify_first_integral,
)
from polycenters.polynomial import BiPoly, parse_poly

X, Y = sp.symbols("x y", positive=True)


def sym(p: BiPoly):
    return sum((sp.Rational(c.numerator, c.denominator) * X**i * Y**j for (i, j), c in p.items()), sp.Integer(0))


def rat(f: Fraction):
    return sp.Rational(f.numerator, f.denominator)


def sympy_derivative_vanishes(K: KolmogorovCubic, FI) -> bool:
    """Oracle: differentiate the first integral symbolically on x, y > 0."""
    H = X ** rat(FI.alpha) * Y ** rat(FI.beta) * sym(FI.R) + rat(FI.log_x) * sp.log(X) + rat(FI.log_y) * sp.log(Y)
    dot = sp.diff(H, X) * X * sym(K.P) + sp.diff(H, Y) * Y * sym(K.Q)
    return sp.simplify(sp.expand(dot / (X ** rat(FI.alpha) * Y ** rat(FI.beta)))) == 0


@pytest.mark.parametrize(
    "name,alpha,beta",
    [("ex1", Fraction(2), Fraction(1)), ("ex2", Fraction(1, 2), Fraction(-3)), ("ex3", Fraction(3), Fraction(1))],
)
def test_examples_exponents_and_first_integral(name, alpha, beta):
    K = KolmogorovCubic.from_field(paper_example(name))
    assert derive_alpha_beta(K) == (alpha, beta)
    FI, cert = first_integral_of(K)
    assert cert.passed
    assert sympy_derivative_vanishes(K, FI)


def test_examples_have_four_centers():
    for name in ("ex1", "ex2", "ex3"):
        kc = configuration_of(KolmogorovCubic.from_field(paper_example(name)))
        assert kc.configuration.total == 4
        assert not kc.partial
    kc = configuration_of(KolmogorovCubic.from_field(paper_example("ex1")))
    assert kc.canonical == Configuration.of(1, 1, 1, 1)
    kc = configuration_of(KolmogorovCubic.from_field(paper_example("ex3")))
    assert kc.canonical == Configuration.of(0, 1, 2, 1)


def test_from_field_rejects_non_kolmogorov():
    with pytest.raises(InvalidSpec):
        KolmogorovCubic.from_field(PlanarField.parse("y", "x"))


def test_inconsistent_relations():
    # p10 = 1, q10 = 0 gives alpha = -1; p01 = 0, q01 = 1 gives beta = -1; p00 = q00 = 1 gives alpha + beta = 0
    K = KolmogorovCubic(parse_poly("1 + x"), parse_poly("1 + y"))
    with pytest.raises(Inconsistent):
        derive_exponents(K)
    assert first_integral_of(K) == (None, None)


def test_one_parameter_family():
    K = KolmogorovCubic(parse_poly("1"), parse_poly("1"))
    s = derive_exponents(K)
    assert s.family is not None
    assert s.alpha + s.beta == 0
    FI, cert = first_integral_of(K)
    assert cert.passed


def test_logarithmic_case():
    # alpha = beta = 0 with constant slots gives logarithms
    K = KolmogorovCubic(parse_poly("1 - y"), parse_poly("-1 + x"))
    assert derive_alpha_beta(K) == (0, 0)
    FI, cert = first_integral_of(K)
    assert FI.has_logs and cert.passed
    assert sympy_derivative_vanishes(K, FI)
    with pytest.raises(NotPolynomialCase):
        aleph_membership(FI)


def test_desingularize_log_removes_logs():
    K = KolmogorovCubic(parse_poly("1 - y + x*y - y^2"), parse_poly("-1 + x - x*y + x^2"))
    assert derive_alpha_beta(K) == (0, 0)
    eps = Fraction(1, 10)
    Ke = desingularize_log(K, eps)
    FI, cert = first_integral_of(Ke)
    assert cert.passed
    assert not FI.has_logs
    assert (FI.alpha, FI.beta) == (eps * K.q(0, 0), -eps * K.p(0, 0))
    assert desingularize_log(K, 0) is K


def test_desingularize_log_wrong_case():
    with pytest.raises(WrongCase):
        desingularize_log(KolmogorovCubic.from_field(paper_example("ex1")), Fraction(1, 10))


def test_verify_detects_wrong_integral():
    K = KolmogorovCubic.from_field(paper_example("ex1"))
    FI = build_first_integral(K, 1, 2)
    assert not verify_first_integral(K, FI).passed


def test_aleph_membership_ex1():
    FI, _ = first_integral_of(KolmogorovCubic.from_field(paper_example("ex1")))
    rep = aleph_membership(FI)
    assert rep.member, rep.failing_conditions


def test_evaluate_array_matches_scalar():
    np = pytest.importorskip("numpy")
    FI, _ = first_integral_of(KolmogorovCubic.from_field(paper_example("ex2")))
    xs = np.array([0.3, -0.7, 1.4])
    ys = np.array([-0.2, 0.9, 2.5])
    vals = FI.evaluate_array(xs, ys)
    for x, y, v in zip(xs, ys, vals):
        assert v == pytest.approx(float(FI(x, y)), rel=1e-12)


coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)
expo = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@settings(max_examples=30, deadline=None)
@given(st.lists(coef, min_size=6, max_size=6), expo, expo)
def test_ansatz_family_first_integral(rs, a, b):
    # P = -(b R + y R_y), Q = a R + x R_x has the first integral x^a y^b R
    R = BiPoly(dict(zip([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)], rs)))
    assume(R.total_degree >= 1)
    P = -(R * b + BiPoly.y() * R.diff("y"))
    Q = R * a + BiPoly.x() * R.diff("x")
    assume(not (P.is_zero() and Q.is_zero()))
    K = KolmogorovCubic(P, Q)
    FI, cert = first_integral_of(K)
    assert FI is not None and cert.passed
    assert sympy_derivative_vanishes(K, FI)
