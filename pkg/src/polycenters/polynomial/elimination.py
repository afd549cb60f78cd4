"""Resultants, GCDs and real linear factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .._mp import MP
from .bivariate import BiPoly, HomoPoly
from .univariate import RealRoot, UniPoly, real_roots, uni_gcd


# -- resultant --------------------------------------------------------------

def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _sylvester(pc: list[int], qc: list[int]) -> list[list[int]]:
    """Sylvester matrix; ``pc``, ``qc`` in descending order (formal degrees)."""
    a, b = len(pc) - 1, len(qc) - 1
    size = a + b
    rows = []
    for s in range(b):
        rows.append([0] * s + pc + [0] * (size - a - 1 - s))
    for s in range(a):
        rows.append([0] * s + qc + [0] * (size - b - 1 - s))
    return rows


def _interpolate(nodes: list[int], values: list[Fraction]) -> UniPoly:
    """Newton divided differences converted to the monomial basis."""
    n = len(nodes)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    poly = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-nodes[i], 1]) + UniPoly([coef[i]])
    return poly


def resultant(p: BiPoly, q: BiPoly, eliminate: str = "y") -> UniPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``eliminate``.

    The result is a polynomial in the remaining variable. It is identically
    zero exactly when ``p`` and ``q`` share a factor of positive degree in
    the eliminated variable.

    Notes
    -----
    The determinant is evaluated at integer abscissae with Bareiss
    elimination and recovered by interpolation, which keeps all intermediate
    arithmetic in exact integers.
    """
    if p.is_zero() or q.is_zero():
        return UniPoly()
    if eliminate == "x":
        p, q = p.swap(), q.swap()
    elif eliminate != "y":
        raise ValueError("eliminate must be 'x' or 'y'")
    pc = p.coefficients_in("y")
    qc = q.coefficients_in("y")
    a, b = max(pc), max(qc)
    if a == 0 and b == 0:
        return UniPoly([1])
    # integer scaling: Res(Lp p, Lq q) = Lp^b Lq^a Res(p, q)
    lp = lcm(*(c.denominator for c in p.terms.values()))
    lq = lcm(*(c.denominator for c in q.terms.values()))
    p_cols = [pc.get(k, UniPoly()) * lp for k in range(a, -1, -1)]
    q_cols = [qc.get(k, UniPoly()) * lq for k in range(b, -1, -1)]
    dxp = max(u.degree for u in p_cols)
    dxq = max(u.degree for u in q_cols)
    bound = b * max(dxp, 0) + a * max(dxq, 0)
    bound = min(bound, p.total_degree * q.total_degree)
    nodes = [0]
    k = 1
    while len(nodes) < bound + 1:
        nodes.append(k)
        if len(nodes) < bound + 1:
            nodes.append(-k)
        k += 1
    values = []
    for t in nodes:
        prow = [int(u(t)) for u in p_cols]
        qrow = [int(u(t)) for u in q_cols]
        values.append(Fraction(_bareiss_det(_sylvester(prow, qrow))))
    res = _interpolate(nodes, values)
    return res * Fraction(1, lp**b * lq**a)


# -- gcd ----------------------------------------------------------------------

def _y_dense(p: BiPoly) -> list[UniPoly]:
    c = p.coefficients_in("y")
    return [c.get(k, UniPoly()) for k in range(max(c) + 1)]


def _content(coeffs: list[UniPoly]) -> UniPoly:
    g = UniPoly()
    for u in coeffs:
        if not u.is_zero():
            g = uni_gcd(g, u) if not g.is_zero() else u.monic()
            if g.degree == 0:
                break
    return g


def _primitive(coeffs: list[UniPoly]) -> list[UniPoly]:
    c = _content(coeffs)
    return [u // c for u in coeffs]


def _prem(a: list[UniPoly], b: list[UniPoly]) -> list[UniPoly]:
    """Pseudo-remainder in y with coefficients in Q[x]."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [u * lb for u in r]
        for j in range(db + 1):
            r[shift + j] = r[shift + j] - lr * b[j]
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    return r


def _from_y_dense(coeffs: list[UniPoly]) -> BiPoly:
    terms = {}
    for k, u in enumerate(coeffs):
        for i, c in enumerate(u.coeffs):
            if c:
                terms[(i, k)] = c
    return BiPoly(terms)


def gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    """Greatest common divisor, normalised with leading coefficient 1.

    Uses the primitive polynomial remainder sequence over ``Q[x][y]``.
    ``gcd(0, 0)`` is ``0``.
    """
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    A, B = _y_dense(p), _y_dense(q)
    ca, cb = _content(A), _content(B)
    cont = uni_gcd(ca, cb)
    A, B = [u // ca for u in A], [u // cb for u in B]
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 1:
        R = _prem(A, B)
        if not R:
            break
        A, B = B, _primitive(R)
    # a remainder of degree 0 in y means the primitive parts are coprime
    G = [UniPoly([1])] if len(B) == 1 else _primitive(B)
    out = _from_y_dense(G) * BiPoly.from_uni(cont, "x")
    return out.normalized()


def has_common_component(p: BiPoly, q: BiPoly) -> bool:
    return not gcd(p, q).is_constant()


# -- real linear factors -----------------------------------------------------

@dataclass(frozen=True)
class LinearFactor:
    """A real linear factor of a binary form.

    Attributes
    ----------
    direction : tuple
        Unit vector ``(a, b)`` on which the factor vanishes, oriented so that
        ``a > 0`` or ``a == 0, b > 0``.
    multiplicity : int
    slope : RealRoot or None
        Root ``t`` of ``h(1, t)`` with ``direction ~ (1, t)``; ``None`` for
        the factor ``x`` (direction ``(0, 1)``).
    """

    direction: tuple
    multiplicity: int
    slope: RealRoot | None


def homo_real_linear_factors(h: HomoPoly) -> list[LinearFactor]:
    """Real linear factors of ``h`` as zero directions with multiplicity."""
    if h.is_zero():
        raise ValueError("the zero form has no factorisation")
    u = h.dehomogenize()
    out = []
    if u.degree > 0:
        for root in real_roots(u):
            t = root.value
            norm = MP.sqrt(1 + t * t)
            out.append(LinearFactor((1 / norm, t / norm), root.multiplicity, root))
    mult_x = h.degree - u.degree
    if mult_x > 0:
        out.append(LinearFactor((MP.mpf(0), MP.mpf(1)), mult_x, None))
    return out
