"""Acceptance checks shared by ``polycenters verify-paper`` and the test suite.

Each ``check_*`` function returns a :class:`CheckResult`; none of them raise
on a mathematical failure.
"""

from __future__ import annotations

import logging
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, wraps

from .classification import (
    IndexReport,
    Kind,
    index_winding,
    default_radius,
    poincare_hopf_audit,
)
from .config import Configuration, canonicalize, equivalent, orbit
from .constructors import (
    ExtremalSpec,
    extremal_hamiltonian,
    normalized_extremal,
    paper_example,
    remark31_system,
)
from .critical_points import PlanarField, finite_critical_points
from .errors import PolycentersError
from .hamiltonian import HamiltonianWitness, field_of, hamiltonian_of, is_hamiltonian, sector_audit
from .kolmogorov import KolmogorovCubic, configuration_of
from .portrait import count_ovals, flood_fill_ovals
from .polynomial import BiPoly, gcd, resultant

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240
QUICK_SWEEP = 1000
QUICK_MINIMUM = 5
EXTREMAL_PAIRS = [(3, 0), (3, 2), (4, 1), (4, 3), (5, 0), (5, 2), (4, 2), (5, 3)]
PRODUCT_PAIRS = [(3, 1), (5, 1), (5, 3)]
REFERENCE_CENTERS = {
    "ex1": [(0.63, 0.45), (-0.63, 0.45), (-0.63, -0.45), (0.63, -0.45)],
    "ex2": [(-22.02, 13.81), (-0.09, -0.47), (1.37, -15.94), (0.94, -0.21)],
    "ex3": [(-1.51, 0.20), (-0.31, -0.09), (-1.31, -0.74), (0.28, -1.41)],
}
EXPECTED = {
    "ex1": ("(1;1;1;1)", (Fraction(2), Fraction(1))),
    "ex2": ("(0;1;1;2)", (Fraction(1, 2), Fraction(-3))),
    "ex3": ("(0;1;2;1)", (Fraction(3), Fraction(1))),
}
HK_CONFIGS = {"(1;1;1;1)", "(0;1;2;1)"}
KOLMOGOROV_CONFIGS = {"(1;1;1;1)", "(0;1;2;1)", "(0;1;1;2)"}


@dataclass
class CheckResult:
    """Outcome of one acceptance criterion."""

    number: int
    key: str
    passed: bool
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"criterion {self.number} ({self.key}): {'PASS' if self.passed else 'FAIL'} [{self.elapsed:.1f}s]"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "key": self.key,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "details": self.details,
            "failures": self.failures[:20],
        }


def _timed(number: int, key: str, limit: float | None = None):
    """Wrap ``fn(res, ...)`` into a check returning a filled :class:`CheckResult`."""

    def deco(fn):
        @wraps(fn)
        def run(*args, **kwargs) -> CheckResult:
            t0 = time.perf_counter()
            res = CheckResult(number, key, True)
            fn(res, *args, **kwargs)
            res.elapsed = time.perf_counter() - t0
            if limit is not None and res.elapsed > limit:
                res.failures.append(f"took {res.elapsed:.1f}s, limit {limit:.0f}s")
            res.passed = not res.failures
            return res

        run.key = key
        return run

    return deco


# -- shared fields -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def named_report(name: str) -> tuple[PlanarField, IndexReport]:
    """Field and classification for ``extremal:n,r``, ``product:n,m`` or an example id."""
    kind, _, args = name.partition(":")
    if kind == "extremal":
        n, r = (int(v) for v in args.split(","))
        F, witness = extremal_hamiltonian(n, r)
        return F, poincare_hopf_audit(F, witness)
    if kind == "product":
        n, m = (int(v) for v in args.split(","))
        F = remark31_system(n, m)
        return F, poincare_hopf_audit(F, hamiltonian_of(F))
    F = paper_example(name)
    if is_hamiltonian(F):
        return F, poincare_hopf_audit(F, hamiltonian_of(F))
    K = KolmogorovCubic.from_field(F)
    cfg = configuration_of(K)
    return F, poincare_hopf_audit(F, cfg.first_integral)


def _count(report: IndexReport, tag: Kind) -> int:
    return sum(1 for _, k in report.finite if k.tag == tag)


def _rq(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    q = rng.choice((1, 2, 3, 4, 5))
    return Fraction(rng.randint(lo * q, hi * q), q)


def _random_poly(rng: random.Random, degree: int, density: float = 0.7, span: int = 3) -> BiPoly:
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if rng.random() < density:
                terms[(i, j)] = Fraction(rng.randint(-span, span))
    terms[(degree, 0)] = Fraction(rng.choice([-span, span, 1, -1]))
    return BiPoly(terms)


# -- criterion 1 -----------------------------------------------------------------------------

@_timed(1, "extremal-counts")
def check_extremal_counts(res: CheckResult, quick: bool = False, time_limit: float = 30.0):
    """Centers and saddles of the extremal Hamiltonians."""
    for n, r in EXTREMAL_PAIRS:
        if quick and n > 4:
            continue
        spec = ExtremalSpec(n, r)
        t0 = time.perf_counter()
        _, report = named_report(f"extremal:{n},{r}")
        dt = time.perf_counter() - t0
        c, s = _count(report, Kind.CENTER), _count(report, Kind.SADDLE)
        res.details[f"({n},{r})"] = {
            "case": spec.parity_case, "centers": c, "saddles": s,
            "expected": [spec.expected_centers, spec.expected_saddles], "seconds": round(dt, 2),
        }
        if (c, s) != (spec.expected_centers, spec.expected_saddles):
            res.failures.append(f"({n},{r}): {c} centers, {s} saddles")
        if dt > time_limit:
            res.failures.append(f"({n},{r}) took {dt:.1f}s")


# -- criterion 2 -----------------------------------------------------------------------------

def random_field_sample(seed: int, count: int = 100) -> list[PlanarField]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.choice((2, 3))
        out.append(PlanarField(_random_poly(rng, d), _random_poly(rng, rng.choice((2, d)))))
    return out


@_timed(2, "poincare-hopf")
def check_poincare_hopf(res: CheckResult, seed: int = DEFAULT_SEED, quick: bool = False, count: int = 100):
    """The index identity on the named fields and on random fields."""
    names = [f"extremal:{n},{r}" for n, r in EXTREMAL_PAIRS if not (quick and n > 4)]
    names += ["ex1", "ex2", "ex3", "hk_circle"] + [f"product:{n},{m}" for n, m in PRODUCT_PAIRS]
    for name in names:
        _, report = named_report(name)
        if not report.identity_holds:
            res.failures.append(f"{name}: 2*{report.sum_f} + {report.sum_inf} != 2")
    res.details["named"] = len(names)
    skipped = 0
    for k, F in enumerate(random_field_sample(seed, count)):
        try:
            report = poincare_hopf_audit(F)
        except PolycentersError as exc:
            skipped += 1
            log.info("random field %d skipped: %s: %s", k, type(exc).__name__, exc)
            continue
        if not report.identity_holds:
            res.failures.append(f"random field {k} ({F}): 2*{report.sum_f} + {report.sum_inf} != 2")
    res.details["random"] = count
    res.details["skipped"] = skipped
    if skipped >= 0.1 * count:
        res.failures.append(f"skip rate {skipped}/{count} is not below 10%")


# -- criterion 3 -----------------------------------------------------------------------------

@_timed(3, "examples", limit=10.0)
def check_examples(res: CheckResult):
    """Configurations, centers and first integrals of ex1-ex3."""
    for name, (config, exps) in EXPECTED.items():
        K = KolmogorovCubic.from_field(paper_example(name))
        cfg = configuration_of(K)
        FI, cert = cfg.first_integral, cfg.certificate
        got = str(cfg.canonical)
        entry = {"configuration": got, "centers": [[float(x), float(y)] for x, y in cfg.centers]}
        if got != config:
            res.failures.append(f"{name}: configuration {got}, expected {config}")
        if FI is None or (FI.alpha, FI.beta) != exps:
            res.failures.append(f"{name}: exponents {None if FI is None else (FI.alpha, FI.beta)}")
        if cert is None or not cert.passed or not cert.E.is_zero():
            res.failures.append(f"{name}: first integral not certified")
        else:
            entry["first_integral"] = FI.display()
        pts = [(float(x), float(y)) for x, y in cfg.centers]
        for px, py in REFERENCE_CENTERS[name]:
            tol = 0.01 * max(1.0, abs(px), abs(py))
            if not any(abs(x - px) <= tol and abs(y - py) <= tol for x, y in pts):
                res.failures.append(f"{name}: no center within {tol} of ({px}, {py})")
        if len(pts) != 4:
            res.failures.append(f"{name}: {len(pts)} certified centers")
        res.details[name] = entry


# -- criterion 4 -----------------------------------------------------------------------------

def random_conic(rng: random.Random) -> BiPoly:
    return BiPoly({(i, j): _rq(rng) for i in range(3) for j in range(3) if i + j <= 2})


def conic_has_real_line(c: BiPoly) -> bool:
    """Whether a polynomial of degree <= 2 has a real linear factor.

    A conic splits into real lines exactly when its symmetric matrix is
    singular and the restriction to the complementary plane is indefinite or
    of rank one.
    """
    if c.total_degree <= 1:
        return c.total_degree == 1
    a, b, cc = c.coeff(2, 0), c.coeff(1, 1) / 2, c.coeff(0, 2)
    d, e, f = c.coeff(1, 0) / 2, c.coeff(0, 1) / 2, c.coeff(0, 0)
    M = ((a, b, d), (b, cc, e), (d, e, f))
    det = (a * (cc * f - e * e) - b * (b * f - e * d) + d * (b * e - cc * d))
    if det != 0:
        return False
    minors = (a * cc - b * b) + (a * f - d * d) + (cc * f - e * e)
    return minors <= 0


@lru_cache(maxsize=None)
def hk_four_center_instances(seed: int, count: int) -> tuple:
    """Conics ``F`` for which ``x*y*F`` has four interior extrema.

    Interior critical points of ``H = x*y*F`` solve ``F + x F_x = 0`` and
    ``F + y F_y = 0``; only instances with four such points, all extrema of
    ``H``, are passed on to the full pipeline.
    """
    rng = random.Random(seed)
    X, Y = BiPoly.x(), BiPoly.y()
    XY = BiPoly.monomial(1, 1)
    found = []
    skipped = 0
    for _ in range(count):
        c = random_conic(rng)
        U, W = c + X * c.diff("x"), c + Y * c.diff("y")
        try:
            pts = finite_critical_points(PlanarField(U, W))
        except PolycentersError:
            skipped += 1
            continue
        if len(pts) != 4:
            continue
        w = HamiltonianWitness(XY * c, True)
        if all(p.x != 0 and p.y != 0 and w.is_extremum(p.x, p.y) for p in pts):
            found.append(c)
    return tuple(found), skipped


@_timed(4, "hk-classification", limit=300.0)
def check_hk_classification(res: CheckResult, seed: int = DEFAULT_SEED, count: int = 10_000,
                            minimum: int = 50):
    """Configurations of four-center cubic HK fields."""
    instances, skipped = hk_four_center_instances(seed, count)
    seen: dict[str, int] = {}
    four = 0
    for c in instances:
        H = BiPoly.monomial(1, 1) * c
        F = field_of(H)
        try:
            report = poincare_hopf_audit(F, HamiltonianWitness(H, True))
        except PolycentersError as exc:
            res.failures.append(f"{c}: {type(exc).__name__}: {exc}")
            continue
        centers = [p.location for p, k in report.finite if k.tag == Kind.CENTER]
        if len(centers) != 4:
            continue
        four += 1
        cfg = str(canonicalize(Configuration.from_points(centers)))
        seen[cfg] = seen.get(cfg, 0) + 1
        if cfg not in HK_CONFIGS:
            res.failures.append(f"F = {c}: configuration {cfg}")
        if conic_has_real_line(c):
            res.failures.append(f"F = {c} has a real linear factor")
        audit = sector_audit(F, report)
        if not audit.holds:
            res.failures.append(f"F = {c}: sector identity fails")
    res.details.update({"sampled": count, "four_center": four, "configurations": seen, "solver_skips": skipped})
    if four < minimum:
        res.failures.append(f"only {four} four-center instances (need {minimum})")


# -- criterion 5 -----------------------------------------------------------------------------

def random_kolmogorov(rng: random.Random) -> KolmogorovCubic:
    """A random cubic Kolmogorov system.

    Most samples come from ``F = x**a * y**b * R``: the field
    ``x' = -x (b R + y R_y)``, ``y' = y (a R + x R_x)`` leaves ``F`` invariant.
    Some use exponents at which logarithmic first integrals appear, and some
    are unconstrained.
    """
    kind = rng.random()
    if kind < 0.15:
        return KolmogorovCubic(random_conic(rng), random_conic(rng))
    R = random_conic(rng)
    if kind < 0.35:
        a, b = Fraction(rng.choice((0, -1, -2))), _rq(rng, -3, 3)
        if rng.random() < 0.5:
            a, b = b, a
    else:
        a, b = _rq(rng, -3, 3), _rq(rng, -3, 3)
    X, Y = BiPoly.x(), BiPoly.y()
    P = -(R * b + Y * R.diff("y"))
    Q = R * a + X * R.diff("x")
    return KolmogorovCubic(P, Q)


@lru_cache(maxsize=None)
def kolmogorov_sweep(seed: int, count: int) -> tuple:
    rng = random.Random(seed)
    out = []
    skipped = 0
    for _ in range(count):
        K = random_kolmogorov(rng)
        if K.P.is_zero() or K.Q.is_zero():
            skipped += 1
            continue
        try:
            cfg = configuration_of(K)
        except PolycentersError:
            skipped += 1
            continue
        if len(cfg.centers) == 4:
            out.append((K, cfg))
    return tuple(out), skipped


@_timed(5, "kolmogorov-classification", limit=600.0)
def check_kolmogorov_classification(res: CheckResult, seed: int = DEFAULT_SEED, count: int = 10_000):
    """Configurations of four-center cubic Kolmogorov systems."""
    instances, skipped = kolmogorov_sweep(seed, count)
    seen: dict[str, int] = {}
    for K, cfg in instances:
        c = str(cfg.canonical)
        seen[c] = seen.get(c, 0) + 1
        if c not in KOLMOGOROV_CONFIGS:
            res.failures.append(f"P = {K.P}, Q = {K.Q}: configuration {c}")
        if cfg.certificate is None or not cfg.certificate.passed or not cfg.certificate.E.is_zero():
            res.failures.append(f"P = {K.P}, Q = {K.Q}: first integral not verified")
    res.details.update({"sampled": count, "four_center": len(instances), "configurations": seen,
                        "skipped": skipped})


# -- criterion 6 -----------------------------------------------------------------------------

@_timed(6, "product-counts")
def check_product_counts(res: CheckResult):
    """Centers and saddles of ``x' = y(y-1)...(y-n+1)``, ``y' = x(x-1)...(x-m+1)``."""
    for n, m in PRODUCT_PAIRS:
        _, report = named_report(f"product:{n},{m}")
        c, s = _count(report, Kind.CENTER), _count(report, Kind.SADDLE)
        res.details[f"({n},{m})"] = {"centers": c, "saddles": s}
        if (c, s) != ((n * m - 1) // 2, (n * m + 1) // 2):
            res.failures.append(f"({n},{m}): {c} centers, {s} saddles")


# -- criterion 7 -----------------------------------------------------------------------------

DEGENERATE_SUITE = [
    ("x^2 - y^2", "2*x*y"),
    ("x^3 - 3*x*y^2", "3*x^2*y - y^3"),
    ("x^2", "y"),
    ("x^2", "y^2"),
    ("x^3", "y"),
    ("-x^3", "y"),
    ("x^3", "y^3"),
    ("x*y", "x^2 - y^2"),
    ("x^2 + y^2", "x*y"),
    ("x^3 + y^2", "y^3 - x"),
]


def _order(p: BiPoly) -> int:
    return min(i + j for i, j in p.terms)


def _elementary_mismatches(F: PlanarField, report: IndexReport, label: str) -> tuple[int, list[str]]:
    locs = [p.location for p, _ in report.finite]
    checked, bad = 0, []
    for p, kind in report.finite:
        if kind.tag == Kind.DEGENERATE:
            continue
        others = [l for l in locs if l != p.location]
        w = index_winding(F, p.location, default_radius(p.location, others), others=others)
        expected = -1 if p.det < 0 else 1
        checked += 1
        if w != expected or kind.index != expected:
            bad.append(f"{label} at {p.as_floats()}: winding {w}, sign rule {expected}")
    return checked, bad


@_timed(7, "index-correctness")
def check_index_correctness(res: CheckResult, seed: int = DEFAULT_SEED, quick: bool = False,
                            hk_count: int = 10_000, kolmogorov_count: int = 10_000):
    """Winding numbers against the Jacobian sign rule, and the degenerate bound."""
    names = [f"extremal:{n},{r}" for n, r in EXTREMAL_PAIRS if not (quick and n > 4)]
    names += ["ex1", "ex2", "ex3", "hk_circle"] + [f"product:{n},{m}" for n, m in PRODUCT_PAIRS]
    total = 0
    for name in names:
        F, report = named_report(name)
        k, bad = _elementary_mismatches(F, report, name)
        total += k
        res.failures.extend(bad)
    for F in random_field_sample(seed):
        try:
            report = poincare_hopf_audit(F)
        except PolycentersError:
            continue
        k, bad = _elementary_mismatches(F, report, str(F))
        total += k
        res.failures.extend(bad)
    for c in hk_four_center_instances(seed, hk_count)[0]:
        H = BiPoly.monomial(1, 1) * c
        F = field_of(H)
        k, bad = _elementary_mismatches(F, poincare_hopf_audit(F, HamiltonianWitness(H, True)), str(F))
        total += k
        res.failures.extend(bad)
    for K, cfg in kolmogorov_sweep(seed, kolmogorov_count)[0]:
        F = K.field
        try:
            report = poincare_hopf_audit(F, cfg.first_integral)
        except PolycentersError:
            continue
        k, bad = _elementary_mismatches(F, report, str(F))
        total += k
        res.failures.extend(bad)
    res.details["elementary_points"] = total
    F = PlanarField.parse("x^2 - y^2", "2*x*y")
    w = index_winding(F, (0, 0), 0.5)
    res.details["z^2 index"] = w
    if w != 2:
        res.failures.append(f"(x^2 - y^2, 2xy) has winding {w} at the origin")
    suite = {}
    for dx, dy in DEGENERATE_SUITE:
        F = PlanarField.parse(dx, dy)
        i = index_winding(F, (0, 0), 0.25)
        bound = min(_order(F.f), _order(F.g))
        suite[f"({dx}, {dy})"] = i
        if abs(i) > bound:
            res.failures.append(f"({dx}, {dy}): |index| = {abs(i)} > {bound}")
    res.details["degenerate_suite"] = suite


# -- criterion 8 -----------------------------------------------------------------------------

def scan_oval_levels(H: BiPoly, bbox, resolution: int | None = None) -> list[tuple[float, int]]:
    """Oval counts at levels between consecutive critical values of ``H``.

    By default the grid is fine enough to put about 20 cells between the two
    closest critical points, so small ovals around isolated extrema are seen.
    """
    pts = finite_critical_points(field_of(H))
    if resolution is None:
        dmin = min(
            (math.dist(p.as_floats(), q.as_floats()) for k, p in enumerate(pts) for q in pts[k + 1:]),
            default=1.0,
        )
        size = max(bbox[1] - bbox[0], bbox[3] - bbox[2])
        resolution = int(min(2400, max(400, math.ceil(20 * size / dmin))))
    values = []
    for v in sorted(float(H(p.x, p.y)) for p in pts):
        if not values or v - values[-1] > 1e-12 * max(1.0, abs(v)):
            values.append(v)
    levels = []
    for a, b in zip(values, values[1:]):
        levels += [a + (b - a) * t for t in (0.1, 0.5, 0.9)]
    return [(lv, count_ovals(H, lv, bbox, resolution)) for lv in sorted(levels)]


def _bbox_for(points, spread: float = 0.75) -> tuple[float, float, float, float]:
    """Box around ``points`` enlarged by ``spread`` times their extent on each side."""
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    margin = spread * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    return min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin


@_timed(8, "oval-counts")
def check_oval_counts(res: CheckResult):
    """Ovals of ``x*y*(x^2 + y^2 - 1)`` and a three-oval level of the normalized (3, 2) field."""
    H = BiPoly.monomial(1, 1) * BiPoly({(2, 0): 1, (0, 2): 1, (0, 0): -1})
    box = (-2.0, 2.0, -2.0, 2.0)
    for lv in (Fraction(1, 16), Fraction(-1, 16)):
        a = count_ovals(H, float(lv), box, 400)
        b = flood_fill_ovals(H, float(lv), box, 1600)
        res.details[f"hk_circle level {lv}"] = [a, b]
        if a != 2 or b != 2:
            res.failures.append(f"level {lv}: {a} ovals, flood fill {b}")
    N = normalized_extremal(3, 2)
    pts = [p.location for p in finite_critical_points(field_of(N.H))]
    bbox = _bbox_for(pts)
    scan = scan_oval_levels(N.H, bbox)
    res.details["normalized (3,2) scan"] = [[round(lv, 6), k] for lv, k in scan]
    three = [lv for lv, k in scan if k == 3]
    if not three:
        res.failures.append("no level with three ovals found")
        return
    lv = three[0]
    res.details["three-oval level"] = lv
    check = flood_fill_ovals(N.H, lv, bbox, 2400)
    res.details["three-oval flood fill"] = check
    if check != 3:
        res.failures.append(f"flood fill finds {check} ovals at level {lv}")


# -- criterion 9 -----------------------------------------------------------------------------

@_timed(9, "properties", limit=60.0)
def check_properties(res: CheckResult, seed: int = DEFAULT_SEED):
    """Configuration symmetry, Hamiltonian round trip, resultant/gcd consistency."""
    tuples = 0
    for total in range(9):
        for i1 in range(total + 1):
            for i2 in range(total + 1 - i1):
                for i3 in range(total + 1 - i1 - i2):
                    c = Configuration.of(i1, i2, i3, total - i1 - i2 - i3)
                    tuples += 1
                    k = canonicalize(c)
                    if canonicalize(k) != k or any(canonicalize(o) != k for o in orbit(c)):
                        res.failures.append(f"canonicalization of {c}")
                    if not all(equivalent(c, o) for o in orbit(c)):
                        res.failures.append(f"orbit of {c}")
    res.details["configurations"] = tuples
    rng = random.Random(seed)
    for k in range(100):
        H = _random_poly(rng, rng.randint(1, 6), density=0.6, span=9)
        H = H - BiPoly.const(H.constant_term())
        w = hamiltonian_of(field_of(H))
        if w.H != H or field_of(w.H) != field_of(H) or not w.checked:
            res.failures.append(f"round trip of {H}")
    res.details["hamiltonians"] = 100
    consistent = 0
    for k in range(200):
        p = _random_poly(rng, rng.randint(1, 3), density=0.6)
        q = _random_poly(rng, rng.randint(1, 3), density=0.6)
        if k % 2:
            c = _random_poly(rng, rng.randint(1, 2), density=0.6) + BiPoly.y()
            p, q = p * c, q * c
        else:
            c = None
        G = gcd(p, q)
        ok = p.exact_div(G) is not None and q.exact_div(G) is not None
        if c is not None:
            ok = ok and G.exact_div(c.normalized()) is not None
        R = resultant(p, q, "y")
        if p.degree_in("y") > 0 or q.degree_in("y") > 0:
            ok = ok and ((len(R.coeffs) == 0) == (G.degree_in("y") > 0))
        if ok:
            consistent += 1
        else:
            res.failures.append(f"gcd/resultant of ({p}, {q})")
    res.details["pairs"] = consistent


CHECKS = {
    1: check_extremal_counts,
    2: check_poincare_hopf,
    3: check_examples,
    4: check_hk_classification,
    5: check_kolmogorov_classification,
    6: check_product_counts,
    7: check_index_correctness,
    8: check_oval_counts,
    9: check_properties,
}
KEYS = {fn.key: n for n, fn in CHECKS.items()}
