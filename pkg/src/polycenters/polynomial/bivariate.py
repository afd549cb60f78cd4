"""Bivariate and binary-form polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .._mp import mpq
from .univariate import UniPoly

Exponent = tuple[int, int]


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class BiPoly:
    """Polynomial in ``x`` and ``y`` with exact rational coefficients.

    Instances are immutable; every operation returns a new polynomial.

    Parameters
    ----------
    terms : mapping, optional
        ``{(i, j): c}`` meaning ``sum c * x**i * y**j``. Zero coefficients are
        discarded, coefficients are converted to :class:`~fractions.Fraction`.
    """

    __slots__ = ("_terms", "_degree", "_hash", "_float_cache", "_float_fn")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent {(i, j)}")
                c = _frac(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._degree = max((i + j for i, j in clean), default=0)
        self._hash = None
        self._float_cache = None
        self._float_fn = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def from_uni(cls, u: UniPoly, var: str = "x") -> "BiPoly":
        if var == "x":
            return cls({(k, 0): c for k, c in enumerate(u.coeffs)})
        return cls({(0, k): c for k, c in enumerate(u.coeffs)})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """Copy of the exponent map."""
        return dict(self._terms)

    def items(self):
        """Terms sorted by exponent pair."""
        return sorted(self._terms.items())

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    @property
    def total_degree(self) -> int:
        return self._degree

    def degree_in(self, var: str) -> int:
        """Degree in one variable, ``-1`` for the zero polynomial."""
        k = 0 if var == "x" else 1
        return max((e[k] for e in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            try:
                other = BiPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .grammar import format_poly

        return f"BiPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        from .grammar import format_poly

        return format_poly(self)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "BiPoly":
        other = _as_bi(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        return self + (-_as_bi(other))

    def __rsub__(self, other) -> "BiPoly":
        return _as_bi(other) - self

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            k = _frac(other)
            return BiPoly({e: c * k for e, c in self._terms.items()})
        out: dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if not other.is_constant() or other.is_zero():
                raise ValueError("division by a non-constant polynomial")
            other = other.constant_term()
        k = _frac(other)
        return BiPoly({e: c / k for e, c in self._terms.items()})

    def __pow__(self, k: int) -> "BiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus -------------------------------------------------------
    def diff(self, var: str) -> "BiPoly":
        if var == "x":
            return BiPoly({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})
        return BiPoly({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    def integrate(self, var: str) -> "BiPoly":
        """Antiderivative vanishing on ``var = 0``."""
        if var == "x":
            return BiPoly({(i + 1, j): c / (i + 1) for (i, j), c in self._terms.items()})
        return BiPoly({(i, j + 1): c / (j + 1) for (i, j), c in self._terms.items()})

    # -- structure ------------------------------------------------------
    def homogeneous_part(self, k: int) -> "HomoPoly":
        coeffs = [Fraction(0)] * (k + 1)
        for (i, j), c in self._terms.items():
            if i + j == k:
                coeffs[j] = c
        return HomoPoly(k, coeffs)

    def homogeneous_parts(self) -> list["HomoPoly"]:
        """Homogeneous components by degree; ``[]`` for the zero polynomial."""
        if self.is_zero():
            return []
        return [self.homogeneous_part(k) for k in range(self._degree + 1)]

    def leading_form(self) -> "HomoPoly":
        return self.homogeneous_part(self._degree)

    def swap(self) -> "BiPoly":
        """Exchange the roles of ``x`` and ``y``."""
        return BiPoly({(j, i): c for (i, j), c in self._terms.items()})

    def coefficients_in(self, var: str) -> dict[int, UniPoly]:
        """View as a polynomial in ``var`` with coefficients in the other variable."""
        acc: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self._terms.items():
            main, other = (i, j) if var == "x" else (j, i)
            acc.setdefault(main, {})[other] = c
        out = {}
        for k, d in acc.items():
            top = max(d)
            out[k] = UniPoly([d.get(t, 0) for t in range(top + 1)])
        return out

    def specialize(self, var: str, value) -> UniPoly:
        """Substitute ``var = value`` (rational) giving a polynomial in the other variable."""
        value = _frac(value)
        other = "y" if var == "x" else "x"
        return UniPoly(
            [u(value) for u in _dense(self.coefficients_in(other))]
        )

    def compose(self, px: "BiPoly", py: "BiPoly") -> "BiPoly":
        """Return ``self(px(x, y), py(x, y))``."""
        xpows = [BiPoly.const(1)]
        ypows = [BiPoly.const(1)]
        for _ in range(self.degree_in("x")):
            xpows.append(xpows[-1] * px)
        for _ in range(self.degree_in("y")):
            ypows.append(ypows[-1] * py)
        acc: dict[Exponent, Fraction] = {}
        for (i, j), c in self._terms.items():
            term = xpows[i] * ypows[j]
            for e, v in term._terms.items():
                acc[e] = acc.get(e, 0) + c * v
        return BiPoly(acc)

    def scale_vars(self, sx, sy) -> "BiPoly":
        """Return ``self(sx * x, sy * y)`` for rational scale factors."""
        sx, sy = _frac(sx), _frac(sy)
        return BiPoly({(i, j): c * sx**i * sy**j for (i, j), c in self._terms.items()})

    def exact_div(self, other: "BiPoly") -> "BiPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return BiPoly()
        # lexicographic order with y first
        key = lambda e: (e[1], e[0])
        lead_e = max(other._terms, key=key)
        lead_c = other._terms[lead_e]
        rem = dict(self._terms)
        quo: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem, key=key)
            qi, qj = e[0] - lead_e[0], e[1] - lead_e[1]
            if qi < 0 or qj < 0:
                return None
            c = rem[e] / lead_c
            quo[(qi, qj)] = c
            for (i, j), v in other._terms.items():
                t = (i + qi, j + qj)
                nv = rem.get(t, 0) - c * v
                if nv:
                    rem[t] = nv
                else:
                    rem.pop(t, None)
        return BiPoly(quo)

    def normalized(self) -> "BiPoly":
        """Scale so the lexicographically largest term has coefficient 1."""
        if self.is_zero():
            return self
        e = max(self._terms, key=lambda e: (e[1], e[0]))
        return self / self._terms[e]

    # -- evaluation -----------------------------------------------------
    def __call__(self, x, y):
        """Evaluate at a point (Fraction, int, float or mpf)."""
        if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
            return sum((c * Fraction(x) ** i * Fraction(y) ** j
                        for (i, j), c in self._terms.items()), Fraction(0))
        if isinstance(x, float) and isinstance(y, float):
            return float(self.evaluate_array(np.float64(x), np.float64(y)))
        acc = 0
        xp: dict[int, object] = {}
        yp: dict[int, object] = {}
        for (i, j), c in self._terms.items():
            if i not in xp:
                xp[i] = x**i
            if j not in yp:
                yp[j] = y**j
            acc += mpq(c) * xp[i] * yp[j]
        return acc

    def float_function(self):
        """Compiled scalar evaluator ``(x: float, y: float) -> float``."""
        if self._float_fn is None:
            parts = []
            for (i, j), c in sorted(self._terms.items()):
                factors = [repr(float(c))] + ["x"] * i + ["y"] * j
                parts.append("*".join(factors))
            src = "lambda x, y: " + (" + ".join(parts) if parts else "0.0")
            self._float_fn = eval(compile(src, "<BiPoly>", "eval"), {"__builtins__": {}})
        return self._float_fn

    def evaluate_array(self, x, y):
        """Vectorised float evaluation with numpy broadcasting."""
        if self._float_cache is None:
            self._float_cache = [(i, j, float(c)) for (i, j), c in self._terms.items()]
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        if not self._float_cache:
            return out
        dx = max(i for i, _, _ in self._float_cache)
        dy = max(j for _, j, _ in self._float_cache)
        xp = [np.ones_like(x)]
        for _ in range(dx):
            xp.append(xp[-1] * x)
        yp = [np.ones_like(y)]
        for _ in range(dy):
            yp.append(yp[-1] * y)
        for i, j, c in self._float_cache:
            out = out + c * xp[i] * yp[j]
        return out


def _as_bi(v) -> BiPoly:
    return v if isinstance(v, BiPoly) else BiPoly.const(v)


def _dense(d: dict[int, UniPoly]) -> list[UniPoly]:
    if not d:
        return []
    return [d.get(k, UniPoly()) for k in range(max(d) + 1)]


class HomoPoly:
    """Binary form ``sum c_k x**(degree-k) y**k``.

    Parameters
    ----------
    degree : int
    coefficients : sequence
        Indexed by the power of ``y``; length ``degree + 1``.
    """

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree: int, coefficients: Iterable):
        coeffs = tuple(_frac(c) for c in coefficients)
        if len(coeffs) != degree + 1:
            raise ValueError("a form of degree d needs d + 1 coefficients")
        self.degree = degree
        self.coefficients = coeffs

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_bipoly(self) -> BiPoly:
        d = self.degree
        return BiPoly({(d - k, k): c for k, c in enumerate(self.coefficients)})

    @classmethod
    def from_bipoly(cls, p: BiPoly) -> "HomoPoly":
        """Interpret a homogeneous :class:`BiPoly` as a form."""
        if p.is_zero():
            return cls(0, [0])
        d = p.total_degree
        if any(i + j != d for (i, j) in p.terms):
            raise ValueError("polynomial is not homogeneous")
        return p.homogeneous_part(d)

    def dehomogenize(self) -> UniPoly:
        """``h(1, t)`` as a polynomial in ``t``."""
        return UniPoly(self.coefficients)

    def __call__(self, x, y):
        return self.to_bipoly()(x, y)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomoPoly)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.coefficients))

    def __repr__(self) -> str:
        return f"HomoPoly({self.degree}, {self.to_bipoly()})"


def homogeneous_parts(p: BiPoly) -> list[HomoPoly]:
    """Homogeneous decomposition of ``p``; see :meth:`BiPoly.homogeneous_parts`."""
    return p.homogeneous_parts()
