"""Univariate polynomials over Q and certified real root isolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .._mp import MP, mpq

#: Default width of refined isolating intervals.
DEFAULT_ROOT_WIDTH = Fraction(1, 2**53)


class UniPoly:
    """Polynomial in one variable with rational coefficients.

    Parameters
    ----------
    coeffs : iterable
        Coefficients in ascending degree. Trailing zeros are dropped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [v if isinstance(v, Fraction) else Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    # -- basic protocol -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "UniPoly") -> "UniPoly":
        other = _as_uni(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-_as_uni(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_uni(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            k = Fraction(other)
            return UniPoly([c * k for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = other.degree, other.leading
        if len(r) - 1 < db:
            return UniPoly(), UniPoly(r)
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] / lb
            q[k - db] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    r[k - db + j] -= c * bj
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate by Horner's rule; works for Fraction, int, float or mpf."""
        acc = 0
        if isinstance(x, (int, Fraction)):
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return Fraction(acc)
        for c in reversed(self.coeffs):
            acc = acc * x + (mpq(c) if not isinstance(x, float) else float(c))
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def content_free(self) -> list[int]:
        """Integer coefficients with gcd 1 and the sign of the original."""
        return _primitive_ints(self.coeffs)


def _as_uni(v) -> UniPoly:
    return v if isinstance(v, UniPoly) else UniPoly([v])


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(u: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``u = lc * prod(a_k ** k)`` with pairwise coprime ``a_k``.

    Only factors of positive degree are returned.
    """
    if u.degree <= 0:
        return []
    du = u.derivative()
    a0 = uni_gcd(u, du)
    b = u // a0
    c = du // a0
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        a = uni_gcd(b, d)
        if a.degree > 0:
            out.append((a, k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return out


# -- integer helpers for Sturm sequences ---------------------------------

def _primitive_ints(coeffs: Sequence[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _neg_rem(a: list[int], b: list[int]) -> list[int]:
    """Positive multiple of ``-(a mod b)`` with integer coefficients."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = len(a) - len(b) + 1
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        r = [v * lb for v in r]
        if c:
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
        r.pop()
    r = _trim(r)
    if not r:
        return r
    # r = lb**steps * (a mod b); flip to obtain -(a mod b) up to a positive factor
    sign = -1 if (lb < 0 and steps % 2 == 1) else 1
    r = [-sign * v for v in r]
    g = 0
    for v in r:
        g = gcd(g, v)
    return [v // g for v in r]


def sturm_chain(p: list[int]) -> list[list[int]]:
    """Sturm sequence of a square-free integer polynomial (ascending coeffs)."""
    chain = [p]
    dp = [i * c for i, c in enumerate(p)][1:]
    if not _trim(dp):
        return chain
    g = 0
    for v in dp:
        g = gcd(g, v)
    chain.append([v // g for v in dp])
    while len(chain[-1]) > 1:
        r = _neg_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(r)
    return chain


def _sign_at(p: list[int], x: Fraction) -> int:
    """Exact sign of ``p(x)`` for rational ``x``."""
    num, den = x.numerator, x.denominator
    d = len(p) - 1
    acc = 0
    dpow = 1
    # acc = sum p_i num^i den^(d-i), accumulated by Horner from the top
    acc = p[d]
    for i in range(d - 1, -1, -1):
        dpow *= den
        acc = acc * num + p[i] * dpow
    return (acc > 0) - (acc < 0)


def _variations(chain: list[list[int]], x) -> int:
    prev = 0
    count = 0
    for p in chain:
        if x == "+inf":
            s = (p[-1] > 0) - (p[-1] < 0)
        elif x == "-inf":
            s = (p[-1] > 0) - (p[-1] < 0)
            if (len(p) - 1) % 2:
                s = -s
        else:
            s = _sign_at(p, x)
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _cauchy_bound(p: list[int]) -> Fraction:
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=0)
    bound = 1 + Fraction(m, lead)
    b = Fraction(1)
    while b < bound:
        b *= 2
    return b


def _isolate(p: list[int], chain: list[list[int]]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b]`` each holding exactly one root of ``p``."""
    if len(p) <= 1:
        return []
    B = _cauchy_bound(p)
    out = []
    stack = [(-B, B, _variations(chain, -B), _variations(chain, B))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        vm = _variations(chain, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out


def _refine(p: list[int], chain, a: Fraction, b: Fraction, width: Fraction):
    """Shrink ``(a, b]`` (one root) to width <= ``width``; return (lo, hi)."""
    sb = _sign_at(p, b)
    if sb == 0:
        return b, b
    sa = _sign_at(p, a)
    while sa == 0:
        # a is a root of p outside the interval; move it inward
        m = (a + b) / 2
        if _variations(chain, m) - _variations(chain, b) == 1:
            a = m
            sa = _sign_at(p, a)
        else:
            b = m
            sb = _sign_at(p, b)
            if sb == 0:
                return b, b
    while b - a > width:
        m = (a + b) / 2
        sm = _sign_at(p, m)
        if sm == 0:
            return m, m
        if sm == sa:
            a = m
        else:
            b = m
    return a, b


def _polish(p: list[int], lo: Fraction, hi: Fraction):
    """High precision value of the unique simple root in ``[lo, hi]``."""
    if lo == hi:
        return mpq(lo)
    lo_m, hi_m = mpq(lo), mpq(hi)
    coeffs = [MP.mpf(c) for c in p]
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]

    def ev(cs, x):
        acc = MP.mpf(0)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    x = (lo_m + hi_m) / 2
    tol = MP.mpf(10) ** (-MP.dps)
    for _ in range(200):
        d = ev(dcoeffs, x)
        if d == 0:
            break
        step = ev(coeffs, x) / d
        xn = x - step
        if not (lo_m <= xn <= hi_m):
            break
        x = xn
        if abs(step) <= tol * max(1, abs(x)):
            return x
    # fall back to bisection at working precision
    s_lo = MP.sign(ev(coeffs, lo_m))
    a, b = lo_m, hi_m
    for _ in range(4 * MP.prec):
        m = (a + b) / 2
        sm = MP.sign(ev(coeffs, m))
        if sm == 0 or b - a <= tol * max(1, abs(m)):
            return m
        if sm == s_lo:
            a = m
        else:
            b = m
    return (a + b) / 2


@dataclass(frozen=True)
class RealRoot:
    """A real root with a certified isolating interval.

    Attributes
    ----------
    value : mpf
        High precision approximation, inside ``isolating_interval``.
    isolating_interval : tuple of Fraction
        ``(lo, hi)``; ``lo == hi`` means the root is exactly rational.
    multiplicity : int
    """

    value: object
    isolating_interval: tuple[Fraction, Fraction]
    multiplicity: int

    @property
    def is_rational(self) -> bool:
        return self.isolating_interval[0] == self.isolating_interval[1]

    @property
    def exact(self) -> Fraction | None:
        return self.isolating_interval[0] if self.is_rational else None


def real_roots(u: UniPoly, width: Fraction = DEFAULT_ROOT_WIDTH) -> list[RealRoot]:
    """All distinct real roots of ``u`` in increasing order.

    Roots are isolated with Sturm sequences on each square-free factor,
    bisected exactly down to ``width`` and then polished with Newton's
    method in the package precision.
    """
    if u.is_zero():
        raise ValueError("real_roots of the zero polynomial")
    out = []
    for factor, mult in squarefree_decomposition(u):
        p = factor.content_free()
        chain = sturm_chain(p)
        for a, b in _isolate(p, chain):
            lo, hi = _refine(p, chain, a, b, width)
            out.append(RealRoot(_polish(p, lo, hi), (lo, hi), mult))
    out.sort(key=lambda r: r.value)
    return out


def count_real_roots(u: UniPoly) -> int:
    """Number of distinct real roots, without refinement."""
    total = 0
    for factor, _ in squarefree_decomposition(u):
        p = factor.content_free()
        chain = sturm_chain(p)
        total += _variations(chain, "-inf") - _variations(chain, "+inf")
    return total
