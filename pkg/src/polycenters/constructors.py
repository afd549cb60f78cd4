"""Explicit fields: extremal Hamiltonians, product systems and worked examples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .critical_points import PlanarField
from .errors import InvalidSpec, UnknownExample
from .hamiltonian import (
    AffineNormalization,
    HamiltonianWitness,
    affine_normalize_lines,
    field_of,
)
from .polynomial import BiPoly, parse_poly


@dataclass(frozen=True)
class ExtremalSpec:
    """Degree ``n`` and number ``r`` of pairs of infinite critical points.

    ``parity_case`` is ``"I"`` when ``n`` and ``r`` have different parity
    (ellipses and lines) and ``"II"`` otherwise (a parabola, ellipses and
    lines).
    """

    n: int
    r: int

    def __post_init__(self):
        n, r = self.n, self.r
        if not (isinstance(n, int) and isinstance(r, int)) or n < 2 or r < 0 or r > n + 1:
            raise InvalidSpec(f"need n >= 2 and 0 <= r <= n + 1, got n={n}, r={r}")
        if self.parity_case == "II" and r < 1:
            raise InvalidSpec("r >= 1 required when n and r have the same parity")

    @property
    def parity_case(self) -> str:
        return "I" if (self.n - self.r) % 2 else "II"

    @property
    def expected_centers(self) -> int:
        return (self.n**2 + 1 - self.r) // 2

    @property
    def expected_saddles(self) -> int:
        if self.parity_case == "I":
            return (self.n**2 + self.r - 1) // 2
        return (self.n**2 + self.r - 2) // 2


def _ellipse(i: int) -> BiPoly:
    return BiPoly({(2, 0): 4**i, (0, 2): Fraction(1, 4**i), (0, 0): -1})


def _line(i: int) -> BiPoly:
    return BiPoly({(1, 0): 2**i, (0, 1): Fraction(1, 2**i), (0, 0): -1})


def _parabola() -> BiPoly:
    return BiPoly({(1, 0): 1, (0, 2): Fraction(-1, 2), (0, 0): 2})


def extremal_factors(n: int, r: int) -> list[BiPoly]:
    """Factor curves whose product is the extremal Hamiltonian."""
    spec = ExtremalSpec(n, r)
    if spec.parity_case == "I":
        k = (n + 1 - r) // 2
        return [_ellipse(i) for i in range(1, k + 1)] + [_line(i) for i in range(k + 1, k + r + 1)]
    k = (n - r) // 2 + 1
    return [_parabola()] + [_ellipse(i) for i in range(2, k + 1)] + [
        _line(i) for i in range(k + 1, (n + r) // 2 + 1)
    ]


class Extremal(NamedTuple):
    field: PlanarField
    witness: HamiltonianWitness


def extremal_hamiltonian(n: int, r: int) -> Extremal:
    """Hamiltonian field of degree ``n`` with the maximal number of centers
    among fields with ``r`` pairs of infinite critical points."""
    H = BiPoly.const(1)
    for fac in extremal_factors(n, r):
        H = H * fac
    return Extremal(field_of(H), HamiltonianWitness(H, True))


def normalized_extremal(n: int, r: int) -> AffineNormalization:
    """Extremal Hamiltonian with its first two line factors moved to the axes.

    The result has the form ``x*y*F`` (an HK Hamiltonian). Needs at least two
    line factors.
    """
    factors = extremal_factors(n, r)
    lines = [f for f in factors if f.total_degree == 1]
    if len(lines) < 2:
        raise InvalidSpec("need at least two line factors")
    H = BiPoly.const(1)
    for fac in factors:
        H = H * fac
    return affine_normalize_lines(H, lines[0], lines[1])


def remark31_system(n: int, m: int) -> PlanarField:
    """``x' = y(y-1)...(y-n+1)``, ``y' = x(x-1)...(x-m+1)`` for odd ``n > m``."""
    if not (isinstance(n, int) and isinstance(m, int)) or n <= m or m < 1 or n % 2 == 0 or m % 2 == 0:
        raise InvalidSpec(f"need odd n > m >= 1, got n={n}, m={m}")
    f = BiPoly.const(1)
    for k in range(n):
        f = f * BiPoly({(0, 1): 1, (0, 0): -k})
    g = BiPoly.const(1)
    for k in range(m):
        g = g * BiPoly({(1, 0): 1, (0, 0): -k})
    return PlanarField(f, g)


_EXAMPLES = {
    "ex1": ("x*(1 - x^2 - 3*y^2)", "2*y*(-1 + 2*x^2 + y^2)"),
    "ex2": ("x*(3 - 3*x + 8*y + 3*x^2 + 6*x*y + y^2)", "1/2*y*(1 - 3*x + 4*y + 5*x^2 + 9*x*y + y^2)"),
    "ex3": ("-x*(5 + 12*x + 24*y + 5*x^2 + 12*x*y + 15*y^2)",
            "y*(15 + 48*x + 36*y + 25*x^2 + 24*x*y + 15*y^2)"),
}

EXAMPLE_IDS = ("ex1", "ex2", "ex3", "hk_circle")


def paper_example(name: str) -> PlanarField:
    """Built-in example fields.

    ``ex1``-``ex3`` are cubic Kolmogorov systems with four centers;
    ``hk_circle`` is the Hamiltonian field of ``x*y*(x^2 + y^2 - 1)``.
    """
    if name == "hk_circle":
        return field_of(parse_poly("x*y*(x^2 + y^2 - 1)"))
    try:
        dx, dy = _EXAMPLES[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_IDS)}") from None
    return PlanarField.parse(dx, dy)
