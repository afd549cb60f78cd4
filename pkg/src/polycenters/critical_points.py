"""Finite and infinite critical points of planar polynomial vector fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

import mpmath

from ._mp import MP, mpq
from .errors import CommonComponent, Degenerate, LineAtInfinityDegenerate
from .polynomial import (
    BiPoly,
    HomoPoly,
    RealRoot,
    gcd,
    homo_real_linear_factors,
    parse_poly,
    real_roots,
    resultant,
)

#: Default half-width of the search box for finite critical points.
DEFAULT_BOUND = 10**6


@dataclass(frozen=True)
class PlanarField:
    """The vector field ``(dx/dt, dy/dt) = (f(x, y), g(x, y))``."""

    f: BiPoly
    g: BiPoly

    @classmethod
    def parse(cls, dx: str, dy: str) -> "PlanarField":
        return cls(parse_poly(dx), parse_poly(dy))

    @cached_property
    def n(self) -> int:
        return self.f.total_degree

    @cached_property
    def m(self) -> int:
        return self.g.total_degree

    @cached_property
    def degree(self) -> int:
        return max(self.n, self.m)

    @cached_property
    def leading_f(self) -> HomoPoly:
        return self.f.leading_form()

    @cached_property
    def leading_g(self) -> HomoPoly:
        return self.g.leading_form()

    @cached_property
    def jacobian_polys(self) -> tuple[BiPoly, BiPoly, BiPoly, BiPoly]:
        """``(f_x, f_y, g_x, g_y)``."""
        return (self.f.diff("x"), self.f.diff("y"), self.g.diff("x"), self.g.diff("y"))

    @cached_property
    def divergence(self) -> BiPoly:
        fx, _, _, gy = self.jacobian_polys
        return fx + gy

    def __call__(self, x, y):
        return self.f(x, y), self.g(x, y)

    def evaluate_array(self, x, y):
        return self.f.evaluate_array(x, y), self.g.evaluate_array(x, y)

    def jacobian_at(self, x, y):
        fx, fy, gx, gy = self.jacobian_polys
        return ((fx(x, y), fy(x, y)), (gx(x, y), gy(x, y)))

    def swapped(self) -> "PlanarField":
        """Conjugate by the reflection ``(x, y) -> (y, x)``."""
        return PlanarField(self.g.swap(), self.f.swap())

    def __str__(self) -> str:
        return f"x' = {self.f}, y' = {self.g}"


@dataclass(frozen=True)
class CriticalPoint:
    """A finite zero of the field.

    Attributes
    ----------
    x, y : mpf
        Refined coordinates.
    box : tuple
        ``((X_lo, X_hi), (Y_lo, Y_hi))`` in sheared coordinates ``X = x - shear*y``,
        ``Y = y``. The parallelogram it describes contains this zero and no other.
    shear : Fraction
    residual : mpf
        ``max(|f|, |g|)`` at ``(x, y)``.
    jacobian : tuple
        2x2 matrix of partial derivatives at ``(x, y)``.
    multiplicity : int
        Multiplicity of ``X`` as a root of the sheared resultant; an estimate of
        the intersection number of ``f = 0`` and ``g = 0`` at the point.
    """

    x: object
    y: object
    box: tuple
    shear: Fraction
    residual: object
    jacobian: tuple
    multiplicity: int = 1

    @property
    def location(self) -> tuple:
        return (self.x, self.y)

    @property
    def trace(self):
        return self.jacobian[0][0] + self.jacobian[1][1]

    @property
    def det(self):
        (a, b), (c, d) = self.jacobian
        return a * d - b * c

    @property
    def eigenvalues(self) -> tuple:
        return jacobian_eigenvalues(self.jacobian)

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def jacobian_eigenvalues(jac) -> tuple:
    (a, b), (c, d) = jac
    tr = a + d
    det = a * d - b * c
    disc = tr * tr / 4 - det
    s = MP.sqrt(disc) if disc >= 0 else MP.mpc(0, MP.sqrt(-disc))
    return (tr / 2 + s, tr / 2 - s)


def _shear(p: BiPoly, lam: Fraction) -> BiPoly:
    """``p(X + lam*Y, Y)``."""
    if lam == 0:
        return p
    return p.compose(BiPoly({(1, 0): 1, (0, 1): lam}), BiPoly.y())


def _shears() -> Iterator[Fraction]:
    yield Fraction(0)
    k = 1
    while True:
        for num in range(1, k + 1):
            for s in (1, -1):
                yield Fraction(s * num, k + 1)
        k += 1


def _coeff_scale(p: BiPoly, x, y):
    r = max(1, abs(x), abs(y))
    return sum(abs(mpq(c)) for c in p.terms.values()) * r ** p.total_degree + 1


def finite_critical_points(
    F: PlanarField,
    *,
    bound: float = DEFAULT_BOUND,
    max_shears: int = 12,
) -> list[CriticalPoint]:
    """All real zeros of ``F`` with ``|x|, |y| <= bound``.

    Both coordinates are obtained from resultants (eliminating ``y`` and
    ``x`` of a sheared copy) whose real roots are isolated exactly; candidate
    pairs are kept when both components vanish to working precision.

    Raises
    ------
    CommonComponent
        If ``f`` and ``g`` share a non-constant factor.
    Degenerate
        If a candidate can be neither accepted nor rejected at the working
        precision.
    """
    f, g = F.f, F.g
    if f.is_zero() and g.is_zero():
        raise CommonComponent(BiPoly())
    common = gcd(f, g)
    if not common.is_constant():
        raise CommonComponent(common)
    if f.is_constant() or g.is_constant():
        return []
    accept_exp = -(MP.dps * 3) // 5
    reject_exp = -MP.dps // 4
    tries = 0
    for lam in _shears():
        if F.leading_f(lam, 1) == 0 or F.leading_g(lam, 1) == 0:
            continue
        tries += 1
        ft, gt = _shear(f, lam), _shear(g, lam)
        R = resultant(ft, gt, "y")
        S = resultant(ft, gt, "x")
        xs = real_roots(R) if R.degree > 0 else []
        ys = real_roots(S) if S.degree > 0 else []
        found: list[tuple[RealRoot, RealRoot]] = []
        for X in xs:
            for Y in ys:
                res = max(abs(ft(X.value, Y.value)), abs(gt(X.value, Y.value)))
                scale = max(_coeff_scale(ft, X.value, Y.value), _coeff_scale(gt, X.value, Y.value))
                rel = res / scale
                if rel <= MP.mpf(10) ** accept_exp:
                    found.append((X, Y))
                elif rel <= MP.mpf(10) ** reject_exp:
                    raise Degenerate(
                        f"candidate ({X.value}, {Y.value}) has ambiguous residual {res}"
                    )
        x_used = [X.isolating_interval for X, _ in found]
        if len(set(x_used)) != len(x_used) and tries < max_shears:
            continue
        points = []
        for X, Y in found:
            x = X.value + mpq(lam) * Y.value
            y = Y.value
            if abs(x) > bound or abs(y) > bound:
                continue
            jac = F.jacobian_at(x, y)
            points.append(
                CriticalPoint(
                    x=x,
                    y=y,
                    box=(X.isolating_interval, Y.isolating_interval),
                    shear=lam,
                    residual=max(abs(f(x, y)), abs(g(x, y))),
                    jacobian=jac,
                    multiplicity=X.multiplicity,
                )
            )
        points.sort(key=lambda p: (p.x, p.y))
        return points
    raise AssertionError("unreachable")


def certify_point(F: PlanarField, p: CriticalPoint, radius: float = 1e-8) -> bool:
    """Krawczyk test: ``True`` proves a unique zero in the box of ``radius``.

    Only succeeds at points with nonsingular Jacobian.
    """
    iv = mpmath.iv
    with mpmath.workdps(max(30, MP.dps)):
        cx, cy = mpmath.mpf(p.x), mpmath.mpf(p.y)
        r = mpmath.mpf(radius)
        X = iv.mpf([cx - r, cx + r])
        Y = iv.mpf([cy - r, cy + r])
        fx, fy, gx, gy = F.jacobian_polys

        def ieval(poly, a, b):
            acc = iv.mpf(0)
            for (i, j), c in poly.terms.items():
                acc += iv.mpf(c.numerator) / c.denominator * a**i * b**j
            return acc

        jc = mpmath.matrix([[float(v) for v in row] for row in p.jacobian])
        try:
            Yinv = mpmath.inverse(jc)
        except ZeroDivisionError:
            return False
        ci, di = iv.mpf(cx), iv.mpf(cy)
        f0 = ieval(F.f, ci, di)
        g0 = ieval(F.g, ci, di)
        J = [[ieval(fx, X, Y), ieval(fy, X, Y)], [ieval(gx, X, Y), ieval(gy, X, Y)]]
        dX, dY = X - cx, Y - cy
        K = []
        for row, c0 in ((0, ci), (1, di)):
            y0, y1 = iv.mpf(Yinv[row, 0]), iv.mpf(Yinv[row, 1])
            val = c0 - (y0 * f0 + y1 * g0)
            for col, d in ((0, dX), (1, dY)):
                ident = 1 if row == col else 0
                m = ident - (y0 * J[0][col] + y1 * J[1][col])
                val += m * d
            K.append(val)
        return (
            X.a < K[0].a and K[0].b < X.b and Y.a < K[1].a and K[1].b < Y.b
        )


# -- infinity ----------------------------------------------------------------

@dataclass(frozen=True)
class InfinitePoint:
    """An antipodal pair of zeros of the compactified field on the equator.

    Attributes
    ----------
    direction : tuple
        Unit vector ``(a, b)``, ``a > 0`` or ``a == 0, b > 0``; the antipode is
        ``(-a, -b)``.
    chart : str
        ``"U1"`` when ``a != 0`` (coordinates ``u = y/x, z = 1/x``), else ``"U2"``
        (``u = x/y, z = 1/y``).
    chart_coordinate : mpf
        ``u`` at the point; the point is ``(u, 0)`` in chart coordinates.
    multiplicity : int
        Multiplicity of the linear factor in the defining form.
    slope : RealRoot or None
        Exact isolating data of ``b/a`` when ``a != 0``.
    """

    direction: tuple
    chart: str
    chart_coordinate: object
    multiplicity: int
    slope: RealRoot | None = None

    pair_count = 2


def defining_form(F: PlanarField) -> HomoPoly:
    """``-y f_d + x g_d`` with ``d = max(n, m)``; its real factors give the points at infinity."""
    d = F.degree
    fd = F.f.homogeneous_part(d).to_bipoly()
    gd = F.g.homogeneous_part(d).to_bipoly()
    form = BiPoly.x() * gd - BiPoly.y() * fd
    return form.homogeneous_part(d + 1)


def infinite_critical_points(F: PlanarField) -> list[InfinitePoint]:
    """One entry per antipodal pair of infinite critical points.

    Raises
    ------
    LineAtInfinityDegenerate
        If the defining form vanishes identically.
    """
    h = defining_form(F)
    if h.is_zero():
        raise LineAtInfinityDegenerate("the whole line at infinity consists of zeros")
    out = []
    for lf in homo_real_linear_factors(h):
        a, b = lf.direction
        if lf.slope is not None:
            out.append(InfinitePoint((a, b), "U1", lf.slope.value, lf.multiplicity, lf.slope))
        else:
            out.append(InfinitePoint((a, b), "U2", MP.mpf(0), lf.multiplicity, None))
    return out


@dataclass(frozen=True)
class ChartSystem:
    """Compactified field in a chart, written in variables ``(u, z)``.

    ``field.f`` and ``field.g`` use ``x`` for ``u`` and ``y`` for ``z``.
    """

    field: PlanarField
    chart: str

    def restriction(self) -> BiPoly:
        """``du/dt`` on the equator ``z = 0``."""
        return BiPoly({(i, 0): c for (i, j), c in self.field.f.terms.items() if j == 0})


def chart_system(F: PlanarField, chart: str) -> ChartSystem:
    """Exact Poincare chart system.

    In ``U1`` (``x = 1/z``, ``y = u/z``) with ``d = max(n, m)`` and
    ``A(u, z) = z**d f(1/z, u/z)``, ``B(u, z) = z**d g(1/z, u/z)``::

        u' = B - u A,   z' = -z A

    ``U2`` is the mirror image with the roles of ``x`` and ``y`` exchanged.
    """
    d = F.degree
    if chart == "U1":
        A = BiPoly({(j, d - i - j): c for (i, j), c in F.f.terms.items()})
        B = BiPoly({(j, d - i - j): c for (i, j), c in F.g.terms.items()})
        u = BiPoly.x()
        z = BiPoly.y()
        return ChartSystem(PlanarField(B - u * A, -(z * A)), "U1")
    if chart == "U2":
        A = BiPoly({(i, d - i - j): c for (i, j), c in F.f.terms.items()})
        B = BiPoly({(i, d - i - j): c for (i, j), c in F.g.terms.items()})
        u = BiPoly.x()
        z = BiPoly.y()
        return ChartSystem(PlanarField(A - u * B, -(z * B)), "U2")
    raise ValueError("chart must be 'U1' or 'U2'")


def to_chart(chart: str, x, y) -> tuple:
    """Image of the finite point ``(x, y)`` in chart coordinates."""
    if chart == "U1":
        return (y / x, 1 / x)
    return (x / y, 1 / y)
