"""Cubic Kolmogorov systems ``x' = x P(x, y)``, ``y' = y Q(x, y)``.

Such a system admits the first integral ``x**alpha * y**beta * R(x, y)``
(possibly with logarithmic terms) whenever the exponents satisfy the
linear relations ``(alpha + i) p_ij + (beta + j) q_ij = 0`` for every
monomial slot ``(i, j)`` with ``i + j <= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from ._mp import MP, mpq
from . import classification as _cls
from .config import Configuration, canonicalize, quadrant
from .critical_points import CriticalPoint, PlanarField, finite_critical_points
from .errors import Inconsistent, InvalidSpec, PolycentersError
from .polynomial import BiPoly, format_poly

SLOTS = [(i, j) for i in range(3) for j in range(3) if i + j <= 2]
_SPECIAL = (0, -1, -2)


class NotPolynomialCase(PolycentersError):
    """The first integral carries logarithmic terms."""


class WrongCase(PolycentersError):
    """The system is outside the case handled by the requested transform."""


@dataclass(frozen=True)
class KolmogorovCubic:
    """The Kolmogorov system built from quadratics ``P`` and ``Q``."""

    P: BiPoly
    Q: BiPoly

    def __post_init__(self):
        if self.P.total_degree > 2 or self.Q.total_degree > 2:
            raise InvalidSpec("P and Q must have degree at most 2")

    @classmethod
    def from_field(cls, F: PlanarField) -> "KolmogorovCubic":
        """Factor ``F = (x P, y Q)``; raises :class:`InvalidSpec` otherwise."""
        P = F.f.exact_div(BiPoly.x())
        Q = F.g.exact_div(BiPoly.y())
        if P is None or Q is None:
            raise InvalidSpec("field is not of the form (x P, y Q)")
        return cls(P, Q)

    @classmethod
    def from_coefficients(cls, p: dict, q: dict) -> "KolmogorovCubic":
        return cls(BiPoly(p), BiPoly(q))

    def p(self, i: int, j: int) -> Fraction:
        return self.P.coeff(i, j)

    def q(self, i: int, j: int) -> Fraction:
        return self.Q.coeff(i, j)

    @cached_property
    def field(self) -> PlanarField:
        return PlanarField(BiPoly.x() * self.P, BiPoly.y() * self.Q)


# -- exponents -----------------------------------------------------------------

@dataclass(frozen=True)
class ExponentSolution:
    """Solution of the exponent relations.

    ``family`` is ``None`` for a unique solution; otherwise it is a direction
    ``(da, db)`` such that ``(alpha + t*da, beta + t*db)`` solves the relations
    for every ``t``.
    """

    alpha: Fraction
    beta: Fraction
    family: tuple[Fraction, Fraction] | None = None


def _pick_on_line(a: Fraction, b: Fraction, r: Fraction) -> tuple[Fraction, Fraction]:
    """Representative of ``{a*alpha + b*beta = r}`` with the smallest denominators."""
    best = None
    for den in range(1, 13):
        for num in range(-24 * den, 24 * den + 1):
            t = Fraction(num, den)
            if b != 0:
                al, be = t, (r - a * t) / b
            else:
                al, be = r / a, t
            key = (al.denominator + be.denominator, abs(al) + abs(be), al, be)
            if best is None or key < best[0]:
                best = (key, (al, be))
        if best[0][0] == 2:
            break
    return best[1]


def derive_exponents(K: KolmogorovCubic) -> ExponentSolution:
    """Solve ``p_ij * alpha + q_ij * beta = -(i p_ij + j q_ij)`` exactly.

    Raises
    ------
    Inconsistent
        If no pair ``(alpha, beta)`` satisfies all relations.
    """
    rows = []
    for i, j in SLOTS:
        p, q = K.p(i, j), K.q(i, j)
        if p or q:
            rows.append((p, q, -(i * p + j * q)))
    if not rows:
        return ExponentSolution(Fraction(0), Fraction(0), (Fraction(1), Fraction(0)))
    # pick a pivot row pair with nonzero 2x2 determinant
    for r1, r2 in product(rows, rows):
        det = r1[0] * r2[1] - r1[1] * r2[0]
        if det:
            alpha = (r1[2] * r2[1] - r1[1] * r2[2]) / det
            beta = (r1[0] * r2[2] - r1[2] * r2[0]) / det
            for p, q, r in rows:
                if p * alpha + q * beta != r:
                    raise Inconsistent("the exponent relations have no common solution")
            return ExponentSolution(alpha, beta)
    # all rows proportional: one relation, consistent iff right-hand sides agree
    a, b, r = rows[0]
    for p, q, rr in rows[1:]:
        k = p / a if a else q / b
        if rr != k * r:
            raise Inconsistent("the exponent relations have no common solution")
    alpha, beta = _pick_on_line(a, b, r)
    return ExponentSolution(alpha, beta, (-b, a))


def derive_alpha_beta(K: KolmogorovCubic) -> tuple[Fraction, Fraction]:
    """Exponents ``(alpha, beta)`` of the Darboux first integral.

    A one-parameter family is resolved to the member with the smallest
    denominators; see :func:`derive_exponents` to detect that case.
    """
    s = derive_exponents(K)
    return s.alpha, s.beta


# -- first integrals ---------------------------------------------------------------

@dataclass(frozen=True)
class FirstIntegral:
    """``|x|**alpha * |y|**beta * R(x, y) + log_x*ln|x| + log_y*ln|y|``.

    With integer exponents, ``|x|**alpha`` differs from ``x**alpha`` by a sign
    that is constant on each quadrant, so both are first integrals there.
    """

    alpha: Fraction
    beta: Fraction
    R: BiPoly
    log_x: Fraction = Fraction(0)
    log_y: Fraction = Fraction(0)
    form_tag: str = "IF1"

    @property
    def has_logs(self) -> bool:
        return bool(self.log_x or self.log_y)

    def display(self) -> str:
        parts = []
        if self.alpha:
            a = self.alpha
            parts.append(f"|x|^({a})" if a.denominator != 1 else ("x" if a == 1 else f"x^{a}"))
        if self.beta:
            b = self.beta
            parts.append(f"|y|^({b})" if b.denominator != 1 else ("y" if b == 1 else f"y^{b}"))
        body = "*".join(parts + [f"({format_poly(self.R)})"])
        if self.log_x:
            body += f" + {self.log_x}*ln|x|"
        if self.log_y:
            body += f" + {self.log_y}*ln|y|"
        return body

    def to_json(self) -> dict:
        from .polynomial import to_json_terms

        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "R": format_poly(self.R),
            "R_terms": to_json_terms(self.R),
            "log_x": str(self.log_x),
            "log_y": str(self.log_y),
            "form": self.form_tag,
            "display": self.display(),
        }

    # numerical evaluation on one quadrant, in X = |x|, Y = |y|
    def _terms(self, x, y):
        sx = 1 if x > 0 else -1
        sy = 1 if y > 0 else -1
        for (i, j), c in self.R.terms.items():
            yield mpq(c) * sx**i * sy**j, mpq(self.alpha + i), mpq(self.beta + j)

    def __call__(self, x, y):
        X, Y = abs(MP.mpf(x)), abs(MP.mpf(y))
        val = sum((k * X**e * Y**f for k, e, f in self._terms(x, y)), MP.mpf(0))
        return val + mpq(self.log_x) * MP.log(X) + mpq(self.log_y) * MP.log(Y)

    def evaluate_array(self, x, y):
        """Float evaluation on numpy arrays; ``nan``/``inf`` on the axes as appropriate."""
        X, Y = np.abs(np.asarray(x, dtype=float)), np.abs(np.asarray(y, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore"):
            val = self.R.evaluate_array(x, y) * X ** float(self.alpha) * Y ** float(self.beta)
            if self.log_x:
                val = val + float(self.log_x) * np.log(X)
            if self.log_y:
                val = val + float(self.log_y) * np.log(Y)
        return val

    def gradient_hessian(self, x, y):
        """Gradient and Hessian in ``(|x|, |y|)``; determinants agree with ``(x, y)``."""
        X, Y = abs(MP.mpf(x)), abs(MP.mpf(y))
        gx = gy = hxx = hxy = hyy = MP.mpf(0)
        for k, e, f in self._terms(x, y):
            t = k * X**e * Y**f
            gx += t * e / X
            gy += t * f / Y
            hxx += t * e * (e - 1) / X**2
            hyy += t * f * (f - 1) / Y**2
            hxy += t * e * f / (X * Y)
        lx, ly = mpq(self.log_x), mpq(self.log_y)
        gx += lx / X
        gy += ly / Y
        hxx -= lx / X**2
        hyy -= ly / Y**2
        return (gx, gy), ((hxx, hxy), (hxy, hyy))

    def is_extremum(self, x, y) -> bool:
        """Nondegenerate local extremum at an interior point (center certificate)."""
        if x == 0 or y == 0:
            return False
        (gx, gy), ((a, b), (_, c)) = self.gradient_hessian(x, y)
        mag = a * a + 2 * b * b + c * c
        if mag == 0:
            return False
        grad_ok = gx * gx + gy * gy <= MP.mpf(10) ** (-20) * max(1, mag)
        return bool(grad_ok and a * c - b * b > MP.mpf(10) ** (-20) * mag)


def _form_tag(alpha: Fraction, beta: Fraction) -> str:
    if alpha not in _SPECIAL:
        return "IF1"
    if beta not in _SPECIAL:
        return "IF2"
    if alpha + beta not in _SPECIAL:
        return "IF3"
    return f"IF4({alpha},{beta})"


def build_first_integral(K: KolmogorovCubic, alpha, beta) -> FirstIntegral:
    """First integral for exponents solving the relations.

    Each slot contributes ``q_ij/(alpha+i)`` (or ``-p_ij/(beta+j)`` when
    ``alpha + i = 0``) to ``R``; a slot with ``alpha + i = beta + j = 0``
    contributes ``q_ij*ln|x| - p_ij*ln|y|`` instead.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    R = {}
    lx = ly = Fraction(0)
    for i, j in SLOTS:
        p, q = K.p(i, j), K.q(i, j)
        if not (p or q):
            continue
        a, b = alpha + i, beta + j
        if a:
            R[(i, j)] = q / a
        elif b:
            R[(i, j)] = -p / b
        else:
            lx += q
            ly -= p
    return FirstIntegral(alpha, beta, BiPoly(R), lx, ly, _form_tag(alpha, beta))


@dataclass(frozen=True)
class Certificate:
    """Result of the exact annihilation check.

    ``E`` is the polynomial with ``dFI/dt = x**alpha * y**beta * E`` along the
    system; ``passed`` iff it is the zero polynomial.
    """

    passed: bool
    E: BiPoly
    offending: list = field(default_factory=list)


def verify_first_integral(K: KolmogorovCubic, FI: FirstIntegral) -> Certificate:
    """Exactly expand the derivative of ``FI`` along ``K``."""
    E = BiPoly()
    for (i, j), c in FI.R.terms.items():
        mono = BiPoly({(i, j): c})
        E = E + mono * (K.P * (FI.alpha + i) + K.Q * (FI.beta + j))
    if FI.has_logs:
        if FI.alpha.denominator != 1 or FI.beta.denominator != 1 or FI.alpha > 0 or FI.beta > 0:
            return Certificate(False, E, ["logarithmic terms need nonpositive integer exponents"])
        shift = BiPoly({(int(-FI.alpha), int(-FI.beta)): 1})
        E = E + shift * (K.P * FI.log_x + K.Q * FI.log_y)
    if FI.R.is_zero() and not FI.has_logs:
        return Certificate(False, E, ["first integral is identically zero"])
    return Certificate(E.is_zero(), E, [(e, str(c)) for e, c in E.items()])


# -- the set aleph --------------------------------------------------------------------

@dataclass(frozen=True)
class AlephReport:
    member: bool
    failing_conditions: list[str]


def aleph_membership(FI: FirstIntegral) -> AlephReport:
    """Genericity conditions on ``R`` and the exponents.

    ``R(x, 0)``, ``R(0, y)`` and the top form of ``R`` must be square-free
    quadratics and ``alpha*beta*(alpha+beta+2)*r00*r20*r02`` nonzero.
    """
    if FI.has_logs:
        raise NotPolynomialCase("first integral has logarithmic terms")
    r = FI.R.coeff
    fails = []
    if r(1, 0) ** 2 - 4 * r(0, 0) * r(2, 0) == 0:
        fails.append("r10^2-4*r00*r20")
    if r(0, 1) ** 2 - 4 * r(0, 0) * r(0, 2) == 0:
        fails.append("r01^2-4*r00*r02")
    if r(1, 1) ** 2 - 4 * r(2, 0) * r(0, 2) == 0:
        fails.append("r11^2-4*r20*r02")
    a, b = FI.alpha, FI.beta
    if a * b * (a + b + 2) * r(0, 0) * r(2, 0) * r(0, 2) == 0:
        fails.append("alpha*beta*(alpha+beta+2)*r00*r20*r02")
    return AlephReport(not fails, fails)


def desingularize_log(K: KolmogorovCubic, epsilon) -> KolmogorovCubic:
    """Perturb an ``alpha = beta = 0`` system into one without logarithms.

    With ``G = q10 x - p01 y + q20 x^2/2 - p11 x y - p02 y^2/2`` the result is
    ``x' = x (P + eps p00 G)``, ``y' = y (Q + eps q00 G)``, which has the
    first integral ``x**(eps q00) y**(-eps p00) (1 + eps G) / eps``.

    Raises
    ------
    WrongCase
        Unless the exponents are ``(0, 0)`` and ``p00 * q00 != 0``.
    """
    eps = Fraction(epsilon)
    if eps == 0:
        return K
    try:
        s = derive_exponents(K)
    except Inconsistent as exc:
        raise WrongCase("system has no Darboux first integral") from exc
    if s.family is not None or (s.alpha, s.beta) != (0, 0):
        raise WrongCase(f"exponents are ({s.alpha}, {s.beta}), expected (0, 0)")
    p00, q00 = K.p(0, 0), K.q(0, 0)
    if p00 * q00 == 0:
        raise WrongCase("needs p00 * q00 != 0")
    G = BiPoly({
        (1, 0): K.q(1, 0),
        (0, 1): -K.p(0, 1),
        (2, 0): K.q(2, 0) / 2,
        (1, 1): -K.p(1, 1),
        (0, 2): -K.p(0, 2) / 2,
    })
    return KolmogorovCubic(K.P + G * (eps * p00), K.Q + G * (eps * q00))


# -- configurations --------------------------------------------------------------------

@dataclass
class KolmogorovConfiguration:
    """Centers of a Kolmogorov system counted by open quadrant.

    Attributes
    ----------
    configuration, canonical : Configuration
        Counts of certified centers and their canonical representative.
    centers : list
        Certified centers ``(x, y)``.
    candidates : list
        Interior points with positive determinant and zero trace that could
        not be certified.
    first_integral : FirstIntegral or None
    certificate : Certificate or None
    """

    configuration: Configuration
    canonical: Configuration
    centers: list
    candidates: list
    first_integral: FirstIntegral | None
    certificate: Certificate | None

    @property
    def partial(self) -> bool:
        return bool(self.candidates)


def first_integral_of(K: KolmogorovCubic) -> tuple[FirstIntegral | None, Certificate | None]:
    """Derive, build and verify; ``(None, None)`` when the relations are inconsistent."""
    try:
        alpha, beta = derive_alpha_beta(K)
    except Inconsistent:
        return None, None
    FI = build_first_integral(K, alpha, beta)
    return FI, verify_first_integral(K, FI)


def interior_points(K: KolmogorovCubic) -> list[CriticalPoint]:
    """Zeros of ``(P, Q)`` off the axes, as critical points of the full field."""
    pts = finite_critical_points(PlanarField(K.P, K.Q))
    out = []
    F = K.field
    for p in pts:
        if p.x == 0 or p.y == 0 or quadrant(p.x, p.y) == 0:
            continue
        jac = F.jacobian_at(p.x, p.y)
        out.append(CriticalPoint(p.x, p.y, p.box, p.shear, p.residual, jac, p.multiplicity))
    return out


def is_center_candidate(p: CriticalPoint) -> bool:
    det, tr = p.det, p.trace
    mag = sum(v * v for row in p.jacobian for v in row)
    return bool(det > _cls.DET_TOL * max(1, mag) and abs(tr) <= _cls.TRACE_TOL * max(1, abs(det)) ** 0.5)


def configuration_of(K: KolmogorovCubic) -> KolmogorovConfiguration:
    """Certified centers by quadrant, certified through the first integral."""
    FI, cert = first_integral_of(K)
    usable = FI is not None and cert is not None and cert.passed
    centers, cands = [], []
    for p in interior_points(K):
        if not is_center_candidate(p):
            continue
        if usable and FI.is_extremum(p.x, p.y):
            centers.append(p.location)
        else:
            cands.append(p.location)
    c = Configuration.from_points(centers)
    return KolmogorovConfiguration(c, canonicalize(c), centers, cands, FI, cert)
