"""Topological type and index of critical points, and global audits."""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Protocol, Sequence

import numpy as np

from ._mp import MP
from .critical_points import (
    CriticalPoint,
    InfinitePoint,
    PlanarField,
    _shear,
    _shears,
    chart_system,
    finite_critical_points,
    infinite_critical_points,
    jacobian_eigenvalues,
    to_chart,
)
from .errors import CommonComponent, InvalidSpec, NonConvergent, RadiusUnsafe
from .polynomial import gcd, resultant

#: ``|det J| <= DET_TOL * max(1, |J|^2)`` counts as a singular Jacobian.
DET_TOL = 1e-30
#: ``|tr J| <= TRACE_TOL * max(1, |det J|)^(1/2)`` counts as zero trace.
TRACE_TOL = 1e-12
MAX_SAMPLES = 2**18
MAX_RADIUS = 0.1


@contextmanager
def tolerances(det: float | None = None, trace: float | None = None):
    """Temporarily override :data:`DET_TOL` and :data:`TRACE_TOL`."""
    global DET_TOL, TRACE_TOL
    saved = DET_TOL, TRACE_TOL
    if det is not None:
        DET_TOL = det
    if trace is not None:
        TRACE_TOL = trace
    try:
        yield
    finally:
        DET_TOL, TRACE_TOL = saved


class Kind(str, Enum):
    CENTER = "center"
    FOCUS_OR_CENTER = "focus_or_center"
    FOCUS = "focus"
    NODE = "node"
    SADDLE = "saddle"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PointKind:
    """Classification of a critical point.

    Attributes
    ----------
    tag : Kind
    index : int
        Poincare index.
    stable : bool or None
        For nodes and foci, whether the real parts of the eigenvalues are
        negative. For infinite points this refers to the chart time.
    """

    tag: Kind
    index: int
    stable: bool | None = None

    def __str__(self) -> str:
        if self.stable is None:
            return self.tag.value
        return f"{'stable' if self.stable else 'unstable'} {self.tag.value}"


class CenterCertificate(Protocol):
    """Anything that can confirm a nondegenerate extremum of a first integral."""

    def is_extremum(self, x, y) -> bool: ...


def _mag2(jac) -> object:
    return sum(v * v for row in jac for v in row)


def _elementary_kind(jac, certificate, point) -> PointKind | None:
    (a, b), (c, d) = jac
    det = a * d - b * c
    tr = a + d
    if abs(det) <= DET_TOL * max(1, _mag2(jac)):
        return None
    if det < 0:
        return PointKind(Kind.SADDLE, -1)
    if abs(tr) <= TRACE_TOL * max(1, abs(det)) ** 0.5:
        if certificate is not None and point is not None and certificate.is_extremum(*point):
            return PointKind(Kind.CENTER, 1)
        return PointKind(Kind.FOCUS_OR_CENTER, 1)
    disc = tr * tr - 4 * det
    tag = Kind.NODE if disc >= 0 else Kind.FOCUS
    return PointKind(tag, 1, stable=bool(tr < 0))


def default_radius(p, others: Sequence) -> float:
    """Half the distance to the nearest other point, capped at ``MAX_RADIUS``."""
    px, py = float(p[0]), float(p[1])
    best = math.inf
    for q in others:
        d = math.hypot(float(q[0]) - px, float(q[1]) - py)
        if d > 0:
            best = min(best, d)
    return min(MAX_RADIUS, best / 2)


def index_winding(
    F: PlanarField,
    p,
    radius: float,
    *,
    others: Sequence = (),
    max_samples: int = MAX_SAMPLES,
) -> int:
    """Winding number of ``(f, g)`` along the circle of ``radius`` about ``p``.

    The circle is sampled with doubling resolution until every angular
    increment is below ``pi/2``. Samples where the float evaluation is tiny
    are re-evaluated in multiprecision.

    Raises
    ------
    RadiusUnsafe
        If a point of ``others`` lies within ``2 * radius`` or the field
        vanishes on the circle.
    NonConvergent
        If ``max_samples`` is reached.
    """
    cx, cy = float(p[0]), float(p[1])
    for q in others:
        d = math.hypot(float(q[0]) - cx, float(q[1]) - cy)
        if 0 < d < 2 * radius:
            raise RadiusUnsafe(f"another critical point at distance {d:.3g} < 2*{radius:.3g}")
    n = 64
    while n <= max_samples:
        theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        xs = cx + radius * np.cos(theta)
        ys = cy + radius * np.sin(theta)
        fv, gv = F.evaluate_array(xs, ys)
        mag = np.hypot(fv, gv)
        tiny = mag <= 1e-10 * max(1.0, float(np.max(mag)))
        if np.any(tiny):
            for k in np.nonzero(tiny)[0]:
                x = MP.mpf(cx) + radius * MP.cos(MP.mpf(theta[k]))
                y = MP.mpf(cy) + radius * MP.sin(MP.mpf(theta[k]))
                fm, gm = F(x, y)
                if fm == 0 and gm == 0:
                    raise RadiusUnsafe("the field vanishes on the winding circle")
                s = max(abs(fm), abs(gm))
                fv[k], gv[k] = float(fm / s), float(gm / s)
        ang = np.arctan2(gv, fv)
        inc = np.diff(np.append(ang, ang[0]))
        inc = (inc + np.pi) % (2 * np.pi) - np.pi
        if np.max(np.abs(inc)) < np.pi / 2:
            return int(round(float(np.sum(inc)) / (2 * np.pi)))
        n *= 2
    raise NonConvergent(f"winding number not stable with {max_samples} samples")


def classify_finite(
    F: PlanarField,
    p: CriticalPoint,
    certificate: CenterCertificate | None = None,
    *,
    others: Sequence | None = None,
    radius: float | None = None,
) -> PointKind:
    """Classify a finite critical point.

    Zero-trace points with positive determinant are reported as centers only
    when ``certificate`` confirms an extremum of a first integral.
    Degenerate points get their index from :func:`index_winding`; the
    neighbouring critical points (``others``) are computed when not given.
    """
    kind = _elementary_kind(p.jacobian, certificate, p.location)
    if kind is not None:
        return kind
    if others is None:
        others = [q.location for q in finite_critical_points(F) if q.location != p.location]
    if radius is None:
        radius = default_radius(p.location, others)
    return PointKind(Kind.DEGENERATE, index_winding(F, p.location, radius, others=others))


def _chart_points(chart: str, finite: Sequence, infinite: Sequence[InfinitePoint]) -> list:
    pts = []
    for q in infinite:
        if q.chart == chart or (chart == "U1" and q.direction[0] != 0):
            pts.append((q.chart_coordinate, 0))
        elif chart == "U2" and q.direction[1] != 0:
            pts.append((q.direction[0] / q.direction[1], 0))
    for x, y in finite:
        if (chart == "U1" and x != 0) or (chart == "U2" and y != 0):
            pts.append(to_chart(chart, x, y))
    return pts


def classify_infinite(
    F: PlanarField,
    q: InfinitePoint,
    *,
    finite: Sequence | None = None,
    infinite: Sequence[InfinitePoint] | None = None,
    radius: float | None = None,
) -> PointKind:
    """Classify an infinite critical point through its chart system."""
    cs = chart_system(F, q.chart)
    u0 = q.chart_coordinate
    jac = cs.field.jacobian_at(u0, MP.mpf(0))
    kind = _elementary_kind(jac, None, None)
    if kind is not None:
        return kind
    if finite is None:
        finite = [p.location for p in finite_critical_points(F)]
    if infinite is None:
        infinite = infinite_critical_points(F)
    others = [pt for pt in _chart_points(q.chart, finite, infinite) if pt != (u0, 0)]
    if radius is None:
        radius = default_radius((u0, 0), others)
    return PointKind(Kind.DEGENERATE, index_winding(cs.field, (u0, 0), radius, others=others))


@dataclass
class IndexReport:
    """Indices of all critical points and the Poincare-Hopf balance.

    Infinite indices are per point; each entry stands for an antipodal pair.
    """

    finite: list[tuple[CriticalPoint, PointKind]]
    infinite: list[tuple[InfinitePoint, PointKind]]

    @property
    def finite_indices(self) -> list[tuple[CriticalPoint, int]]:
        return [(p, k.index) for p, k in self.finite]

    @property
    def infinite_indices(self) -> list[tuple[InfinitePoint, int]]:
        return [(q, k.index) for q, k in self.infinite]

    @property
    def sum_f(self) -> int:
        return sum(k.index for _, k in self.finite)

    @property
    def sum_inf(self) -> int:
        return sum(InfinitePoint.pair_count * k.index for _, k in self.infinite)

    @property
    def identity_holds(self) -> bool:
        return 2 * self.sum_f + self.sum_inf == 2


def poincare_hopf_audit(
    F: PlanarField,
    certificate: CenterCertificate | None = None,
    *,
    finite: Sequence[CriticalPoint] | None = None,
    infinite: Sequence[InfinitePoint] | None = None,
) -> IndexReport:
    """Classify every critical point and evaluate ``2*sum_f + sum_inf == 2``."""
    if finite is None:
        finite = finite_critical_points(F)
    if infinite is None:
        infinite = infinite_critical_points(F)
    locs = [p.location for p in finite]
    fin = []
    for p in finite:
        others = [l for l in locs if l != p.location]
        fin.append((p, classify_finite(F, p, certificate, others=others)))
    inf = [(q, classify_infinite(F, q, finite=locs, infinite=infinite)) for q in infinite]
    return IndexReport(fin, inf)


@dataclass(frozen=True)
class BezoutReport:
    real_affine_count: int
    complex_affine_count: int
    infinity_deficit: int
    product_nm: int

    @property
    def consistent(self) -> bool:
        return self.complex_affine_count + self.infinity_deficit == self.product_nm


def bezout_audit(F: PlanarField, finite: Sequence[CriticalPoint] | None = None) -> BezoutReport:
    """Split the ``n*m`` intersections of ``f = 0`` and ``g = 0`` into affine and infinite.

    The affine count (complex, with multiplicity) is the degree of the
    resultant of a shear in which both curves avoid the point ``[0:1:0]``.
    """
    common = gcd(F.f, F.g)
    if not common.is_constant() or (F.f.is_zero() and F.g.is_zero()):
        raise CommonComponent(common)
    nm = F.n * F.m
    for lam in _shears():
        if F.leading_f(lam, 1) != 0 and F.leading_g(lam, 1) != 0:
            break
    R = resultant(_shear(F.f, lam), _shear(F.g, lam), "y")
    affine = max(R.degree, 0)
    if finite is None:
        finite = finite_critical_points(F)
    real = sum(p.multiplicity for p in finite)
    return BezoutReport(real, affine, nm - affine, nm)


def center_bound(n: int, m: int, r: int = 0) -> int:
    """Maximal number of centers of a Hamiltonian field of degrees ``(n, m)``.

    ``(n*n + 1 - r) // 2`` when ``n == m`` (``r`` pairs of infinite critical
    points), ``(n*m + 1) // 2`` when ``n > m``.
    """
    if not (isinstance(n, int) and isinstance(m, int)) or m < 1 or n < m or r < 0:
        raise InvalidSpec(f"need n >= m >= 1 and r >= 0, got n={n}, m={m}, r={r}")
    if n == m:
        if r > n + 1:
            raise InvalidSpec(f"r <= n + 1 required, got r={r}")
        return (n * n + 1 - r) // 2
    return (n * m + 1) // 2


def psi_membership(F: PlanarField) -> bool:
    """``True`` iff the top-degree forms of ``f`` and ``g`` are coprime."""
    return gcd(F.leading_f.to_bipoly(), F.leading_g.to_bipoly()).is_constant()


def eigenvalues(jac) -> tuple:
    return jacobian_eigenvalues(jac)
