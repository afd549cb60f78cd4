"""Hamiltonian structure, HK decomposition and sector bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ._mp import MP
from .classification import IndexReport, Kind, poincare_hopf_audit
from .config import Configuration, canonicalize, quadrant
from .critical_points import PlanarField
from .errors import InvalidSpec, PolycentersError
from .polynomial import BiPoly, gcd


class NotHamiltonian(PolycentersError):
    """The field has nonzero divergence."""


def field_of(H: BiPoly) -> PlanarField:
    """Hamiltonian field ``(-H_y, H_x)``."""
    return PlanarField(-H.diff("y"), H.diff("x"))


@dataclass(frozen=True)
class HamiltonianWitness:
    """A Hamiltonian ``H`` together with the result of the exact check.

    Centers of a Hamiltonian field are exactly the nondegenerate extrema of
    ``H``; :meth:`is_extremum` serves as a center certificate.
    """

    H: BiPoly
    checked: bool

    @cached_property
    def _hessian(self):
        Hx, Hy = self.H.diff("x"), self.H.diff("y")
        return Hx.diff("x"), Hx.diff("y"), Hy.diff("y")

    def hessian_det(self, x, y):
        hxx, hxy, hyy = self._hessian
        a, b, c = hxx(x, y), hxy(x, y), hyy(x, y)
        return a * c - b * b, (a * a + 2 * b * b + c * c)

    def is_extremum(self, x, y) -> bool:
        det, mag = self.hessian_det(x, y)
        return bool(det > 1e-30 * max(1, mag))

    def field(self) -> PlanarField:
        return field_of(self.H)


def is_hamiltonian(F: PlanarField) -> bool:
    """``True`` iff ``f_x + g_y`` is the zero polynomial."""
    return F.divergence.is_zero()


def hamiltonian_of(F: PlanarField) -> HamiltonianWitness:
    """Recover ``H`` with ``H(0, 0) = 0``, ``f = -H_y`` and ``g = H_x``.

    Raises
    ------
    NotHamiltonian
    """
    if not is_hamiltonian(F):
        raise NotHamiltonian(f"divergence {F.divergence} is not zero")
    g_on_axis = BiPoly({(i, 0): c for (i, j), c in F.g.terms.items() if j == 0})
    H = g_on_axis.integrate("x") - F.f.integrate("y")
    checked = -H.diff("y") == F.f and H.diff("x") == F.g
    return HamiltonianWitness(H, checked)


@dataclass(frozen=True)
class HKStructure:
    """``H = x*y*F`` when ``hk`` is true; ``F`` is ``None`` otherwise."""

    F: BiPoly | None
    hk: bool


def hk_decompose(H: BiPoly) -> HKStructure:
    q = H.exact_div(BiPoly.x()) if not H.is_zero() else None
    q = q.exact_div(BiPoly.y()) if q is not None else None
    if q is None:
        return HKStructure(None, False)
    return HKStructure(q, True)


def hk_field(F: BiPoly) -> PlanarField:
    """Hamiltonian field of ``H = x*y*F``."""
    return field_of(BiPoly({(1, 1): 1}) * F)


@dataclass(frozen=True)
class AffineNormalization:
    """``H_new(u, v) = det(A) * H(x, y)`` where ``(u, v) = A (x, y) + c``.

    The Hamiltonian field of ``H_new`` is the image of the field of ``H``
    under the affine map, so orbits and critical points correspond exactly.
    """

    H: BiPoly
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    offset: tuple[Fraction, Fraction]

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def forward(self, x, y):
        (a, b), (c, d) = self.matrix
        return a * x + b * y + self.offset[0], c * x + d * y + self.offset[1]


def affine_normalize_lines(H: BiPoly, l1: BiPoly, l2: BiPoly) -> AffineNormalization:
    """Move the lines ``l1 = 0`` and ``l2 = 0`` to ``u = 0`` and ``v = 0``.

    Parameters
    ----------
    l1, l2 : BiPoly
        Affine linear polynomials with independent linear parts.
    """
    for l in (l1, l2):
        if l.total_degree != 1:
            raise InvalidSpec(f"{l} is not an affine linear polynomial")
    A = ((l1.coeff(1, 0), l1.coeff(0, 1)), (l2.coeff(1, 0), l2.coeff(0, 1)))
    c = (l1.coeff(0, 0), l2.coeff(0, 0))
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if det == 0:
        raise InvalidSpec("the two lines are parallel")
    # (x, y) = A^{-1} ((u, v) - c)
    inv = ((A[1][1] / det, -A[0][1] / det), (-A[1][0] / det, A[0][0] / det))
    u = BiPoly({(1, 0): 1, (0, 0): -c[0]})
    v = BiPoly({(0, 1): 1, (0, 0): -c[1]})
    px = u * inv[0][0] + v * inv[0][1]
    py = u * inv[1][0] + v * inv[1][1]
    return AffineNormalization(H.compose(px, py) * det, A, c)


def reduced_field(F: PlanarField) -> tuple[PlanarField, BiPoly]:
    """Divide out the common factor of ``f`` and ``g``.

    Returns the reduced field (orbitally equivalent away from the common
    curve) and the common factor.
    """
    common = gcd(F.f, F.g)
    if common.is_zero() or common.is_constant():
        return F, BiPoly.const(1)
    return PlanarField(F.f.exact_div(common), F.g.exact_div(common)), common


# -- sectors ------------------------------------------------------------------

# sector j is bounded by the half-axes at angles (j-1)*pi/2 and j*pi/2
_SECTOR_AXES = {1: ("+x", "+y"), 2: ("+y", "-x"), 3: ("-x", "-y"), 4: ("-y", "+x")}
_AXIS_TOL = MP.mpf(10) ** (-25)


def _half_axis(x, y) -> str | None:
    if abs(x) <= _AXIS_TOL and abs(y) <= _AXIS_TOL:
        return None
    if abs(y) <= _AXIS_TOL:
        return "+x" if x > 0 else "-x"
    if abs(x) <= _AXIS_TOL:
        return "+y" if y > 0 else "-y"
    return None


@dataclass(frozen=True)
class SectorCount:
    saddles: int
    nodes: int
    interior_index_sum: int
    hypotheses_hold: bool

    @property
    def holds(self) -> bool:
        return self.saddles == 2 * self.interior_index_sum + self.nodes


@dataclass(frozen=True)
class SectorAudit:
    """Per-quadrant balance ``s_j = 2 * (interior index sum) + n_j``.

    ``hypotheses_hold`` is false for a sector whose boundary carries points
    other than saddles (finite) or nodes (infinite); the identity is only
    claimed when it is true.
    """

    sectors: dict[int, SectorCount]

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.sectors.values())


def sector_audit(F: PlanarField, report: IndexReport | None = None) -> SectorAudit:
    """Evaluate the sector identity for a field with invariant coordinate axes.

    Raises
    ------
    InvalidSpec
        If the axes are not invariant (``x`` must divide ``f`` and ``y``
        must divide ``g``).
    """
    if F.f.exact_div(BiPoly.x()) is None or F.g.exact_div(BiPoly.y()) is None:
        raise InvalidSpec("sector audit needs x | f and y | g")
    if report is None:
        cert = hamiltonian_of(F) if is_hamiltonian(F) else None
        report = poincare_hopf_audit(F, cert)
    out = {}
    for j, axes in _SECTOR_AXES.items():
        s = n = interior = 0
        ok = True
        for p, kind in report.finite:
            ax = _half_axis(p.x, p.y)
            if ax in axes:
                if kind.tag == Kind.SADDLE:
                    s += 1
                elif kind.tag == Kind.NODE:
                    n += 1
                else:
                    ok = False
            elif ax is None and quadrant(p.x, p.y) == j:
                interior += kind.index
        for q, kind in report.infinite:
            a, b = q.direction
            for sx, sy in ((a, b), (-a, -b)):
                if abs(sx) <= _AXIS_TOL or abs(sy) <= _AXIS_TOL:
                    continue  # vertices of the sector
                if quadrant(sx, sy) == j:
                    if kind.tag == Kind.NODE:
                        n += 1
                    else:
                        ok = False
        out[j] = SectorCount(s, n, interior, ok)
    return SectorAudit(out)


# -- configuration rules -------------------------------------------------------

def thm41_rules_check(c: Configuration, n: int) -> list[str]:
    """Rules (i)-(v) that a configuration with ``(n*n - 1)//2`` HK centers must obey.

    The configuration is first brought to canonical form (``i1`` minimal,
    ``i2 <= i4``). Returns the labels of the violated rules; a total
    different from ``(n*n - 1)//2`` is reported as ``"total"``.
    """
    if n < 3:
        raise InvalidSpec("the rules concern degree n >= 3")
    i1, i2, i3, i4 = canonicalize(c).counts
    bad = []
    if c.total != (n * n - 1) // 2:
        bad.append("total")
    if 0 in (i2, i3, i4):
        bad.append("i")
    need = n - 1 if n % 2 else n - 2
    if min(i1 + i3, i2 + i4) < need:
        bad.append("ii")
    if i1 == 0 and (i2 < (n - 1) // 2 or i3 < (n - 2 if n % 2 == 0 else n - 1)):
        bad.append("iii")
    top = (n * n - 2 * n + 2) // 2
    big = max(i1, i2, i3, i4)
    if not ((n * n + 4) // 8 <= big <= top) or i1 > (n * n - 1) // 8:
        bad.append("iv")
    if top in (i1, i2, i3, i4) and (i1, i2, i3, i4) != (0, (n - 1) // 2, top, (n - 1) // 2):
        bad.append("v")
    return bad
