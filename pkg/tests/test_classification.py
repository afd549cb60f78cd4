import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycenters import classification as cls
from polycenters.classification import (
    Kind,
    bezout_audit,
    center_bound,
    classify_finite,
    index_winding,
    poincare_hopf_audit,
    psi_membership,
)
from polycenters.constructors import paper_example
from polycenters.critical_points import CriticalPoint, PlanarField, finite_critical_points
from polycenters.errors import CommonComponent, InvalidSpec
from polycenters.hamiltonian import hamiltonian_of


def only_point(F: PlanarField) -> CriticalPoint:
    (p,) = [p for p in finite_critical_points(F) if p.as_floats() == (0.0, 0.0)]
    return p


@pytest.mark.parametrize(
    "dx,dy,tag,stable",
    [
        ("x", "-y", Kind.SADDLE, None),
        ("-x", "-2*y", Kind.NODE, True),
        ("x", "2*y", Kind.NODE, False),
        ("-x - y", "x - y", Kind.FOCUS, True),
        ("x - y", "x + y", Kind.FOCUS, False),
        ("-y + x^2", "x", Kind.FOCUS_OR_CENTER, None),
    ],
)
def test_elementary_kinds(dx, dy, tag, stable):
    F = PlanarField.parse(dx, dy)
    k = classify_finite(F, only_point(F))
    assert k.tag == tag
    assert k.stable == stable
    assert k.index == (-1 if tag == Kind.SADDLE else 1)


def test_center_needs_certificate():
    F = PlanarField.parse("-y", "x")
    p = only_point(F)
    assert classify_finite(F, p).tag == Kind.FOCUS_OR_CENTER
    assert classify_finite(F, p, hamiltonian_of(F)).tag == Kind.CENTER


def test_hamiltonian_saddle_is_not_a_center():
    F = PlanarField.parse("-y", "-x")
    assert classify_finite(F, only_point(F), hamiltonian_of(F)).tag == Kind.SADDLE


@pytest.mark.parametrize(
    "dx,dy,index",
    [
        ("x^2 - y^2", "2*x*y", 2),
        ("x^3 - 3*x*y^2", "3*x^2*y - y^3", 3),
        ("x^2 - y^2", "-2*x*y", -2),
        ("x^3", "y", 1),
        ("-x^3", "y", -1),
        ("x^2", "y", 0),
    ],
)
def test_degenerate_indices(dx, dy, index):
    F = PlanarField.parse(dx, dy)
    k = classify_finite(F, only_point(F))
    assert k.tag == Kind.DEGENERATE
    assert k.index == index
    assert index_winding(F, (0, 0), 0.5) == index


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3).filter(lambda k: k != 0), st.floats(0.01, 2.0))
def test_winding_of_power_map_any_radius(k, r):
    # z^k or conj(z)^|k| has index k at the origin, whatever the radius
    n = abs(k)
    sign = 1 if k > 0 else -1
    re = " + ".join(f"({c})*x^{n - 2*j}*y^{2*j}" for j, c in _binom_even(n))
    im = " + ".join(f"({c})*x^{n - 2*j - 1}*y^{2*j + 1}" for j, c in _binom_odd(n))
    F = PlanarField.parse(re, im if sign > 0 else f"-({im})")
    assert index_winding(F, (0, 0), r) == k


def _binom_even(n):
    from math import comb

    return [(j, comb(n, 2 * j) * (-1) ** j) for j in range(n // 2 + 1)]


def _binom_odd(n):
    from math import comb

    return [(j, comb(n, 2 * j + 1) * (-1) ** j) for j in range((n - 1) // 2 + 1)]


def test_poincare_hopf_ex1():
    F = paper_example("ex1")
    rep = poincare_hopf_audit(F)
    assert rep.identity_holds
    assert rep.sum_f == -1
    assert rep.sum_inf == 4


def test_poincare_hopf_linear_rotation():
    rep = poincare_hopf_audit(PlanarField.parse("-y", "x"))
    assert rep.infinite == []
    assert rep.sum_f == 1 and rep.identity_holds


def test_infinite_saddle_and_node():
    rep = poincare_hopf_audit(PlanarField.parse("x", "2*y"))
    tags = sorted(k.tag.value for _, k in rep.infinite)
    assert tags == ["node", "saddle"]
    assert rep.identity_holds


def test_bezout_audit_full_and_deficient():
    b = bezout_audit(paper_example("ex1"))
    assert (b.real_affine_count, b.complex_affine_count, b.infinity_deficit, b.product_nm) == (9, 9, 0, 9)
    assert b.consistent
    # x*y - 1 and x meet only at infinity
    b = bezout_audit(PlanarField.parse("x*y - 1", "x"))
    assert (b.complex_affine_count, b.infinity_deficit, b.product_nm) == (0, 2, 2)


def test_bezout_audit_common_component():
    with pytest.raises(CommonComponent):
        bezout_audit(PlanarField.parse("x*(x + y)", "y*(x + y)"))


def test_psi_membership():
    assert psi_membership(paper_example("ex1"))
    assert not psi_membership(PlanarField.parse("x*y - 1", "x"))


@pytest.mark.parametrize("n,m,r,value", [(3, 3, 0, 5), (3, 3, 2, 4), (4, 4, 1, 8), (5, 3, 0, 8), (3, 1, 0, 2)])
def test_center_bound_values(n, m, r, value):
    assert center_bound(n, m, r) == value


@pytest.mark.parametrize("args", [(2, 3, 0), (3, 3, 5), (3, 0, 0), (3, 3, -1)])
def test_center_bound_rejects(args):
    with pytest.raises(InvalidSpec):
        center_bound(*args)


def test_tolerances_context_restores():
    before = cls.DET_TOL, cls.TRACE_TOL
    F = PlanarField.parse("-y + x^2", "x + 1e-8*y")
    p = only_point(F)
    assert classify_finite(F, p).tag == Kind.FOCUS
    with cls.tolerances(trace=1e-6):
        assert classify_finite(F, p).tag == Kind.FOCUS_OR_CENTER
    assert (cls.DET_TOL, cls.TRACE_TOL) == before
