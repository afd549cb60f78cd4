"""End-to-end analysis of a planar polynomial field and its JSON report."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._mp import MP
from .classification import (
    BezoutReport,
    IndexReport,
    Kind,
    bezout_audit,
    center_bound,
    poincare_hopf_audit,
    psi_membership,
    tolerances,
)
from .config import Configuration, canonicalize
from .critical_points import (
    DEFAULT_BOUND,
    PlanarField,
    finite_critical_points,
    infinite_critical_points,
)
from .hamiltonian import (
    HamiltonianWitness,
    hamiltonian_of,
    hk_decompose,
    is_hamiltonian,
    reduced_field,
)
from .kolmogorov import FirstIntegral, KolmogorovCubic, first_integral_of
from .polynomial import BiPoly, format_poly, to_json_terms

SCHEMA = 1


@dataclass(frozen=True)
class AnalysisOptions:
    """Knobs of :func:`analyze`; defaults are the module defaults."""

    bound: float = DEFAULT_BOUND
    det_tol: float | None = None
    trace_tol: float | None = None


@dataclass
class AnalysisReport:
    """Everything :func:`analyze` finds out about a field.

    ``field`` is the input; ``reduced`` is the field actually analyzed (the
    input with the common factor of its components divided out, if any).
    """

    field: PlanarField
    reduced: PlanarField
    common_factor: BiPoly
    hamiltonian: HamiltonianWitness | None
    hk: bool
    kolmogorov: bool
    psi_member: bool
    indices: IndexReport
    bezout: BezoutReport
    center_bound: int | None
    configuration: Configuration
    first_integral: FirstIntegral | None = None
    first_integral_verified: bool | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def centers(self) -> list:
        return [p for p, k in self.indices.finite if k.tag == Kind.CENTER]

    @property
    def bezout_ok(self) -> bool:
        b = self.bezout
        ok = b.consistent and b.real_affine_count <= b.complex_affine_count
        if self.psi_member:
            ok = ok and b.infinity_deficit == 0
        return ok

    @property
    def center_bound_ok(self) -> bool | None:
        if self.hamiltonian is None or self.center_bound is None:
            return None
        return len(self.centers) <= self.center_bound

    @property
    def audits_pass(self) -> bool:
        return self.indices.identity_holds and self.bezout_ok and self.center_bound_ok is not False

    def to_json(self) -> dict:
        fin = []
        for p, k in self.indices.finite:
            fin.append({
                "x": _num(p.x),
                "y": _num(p.y),
                "kind": k.tag.value,
                "stable": k.stable,
                "index": k.index,
                "eigenvalues": [[_num(MP.re(v)), _num(MP.im(v))] for v in p.eigenvalues],
                "multiplicity": p.multiplicity,
            })
        inf = []
        for q, k in self.indices.infinite:
            inf.append({
                "direction": [_num(q.direction[0]), _num(q.direction[1])],
                "chart": q.chart,
                "kind": k.tag.value,
                "stable": k.stable,
                "index": k.index,
                "multiplicity": q.multiplicity,
            })
        out = {
            "schema": SCHEMA,
            "field": {"dx": format_poly(self.field.f), "dy": format_poly(self.field.g)},
            "degrees": {"n": self.field.n, "m": self.field.m},
            "structure": {
                "hamiltonian": self.hamiltonian is not None,
                "hk": self.hk,
                "kolmogorov": self.kolmogorov,
                "psi_member": self.psi_member,
            },
            "finite_points": fin,
            "infinite_points": inf,
            "audits": {
                "poincare_hopf": {
                    "sum_finite": self.indices.sum_f,
                    "sum_infinite": self.indices.sum_inf,
                    "pass": self.indices.identity_holds,
                },
                "bezout": {
                    "real_affine": self.bezout.real_affine_count,
                    "complex_affine": self.bezout.complex_affine_count,
                    "at_infinity": self.bezout.infinity_deficit,
                    "nm": self.bezout.product_nm,
                    "pass": self.bezout_ok,
                },
                "center_bound": {
                    "r": len(self.indices.infinite),
                    "bound": self.center_bound,
                    "centers": len(self.centers),
                    "pass": self.center_bound_ok,
                },
            },
            "configuration": {
                "raw": str(self.configuration),
                "canonical": str(canonicalize(self.configuration)),
            },
            "first_integral": None,
            "warnings": list(self.warnings),
        }
        if self.common_factor.total_degree > 0:
            out["common_factor"] = format_poly(self.common_factor)
        if self.hamiltonian is not None:
            out["first_integral"] = {
                "kind": "hamiltonian",
                "H": format_poly(self.hamiltonian.H),
                "H_terms": to_json_terms(self.hamiltonian.H),
                "verified": self.hamiltonian.checked,
            }
        elif self.first_integral is not None:
            out["first_integral"] = {
                "kind": "kolmogorov",
                **self.first_integral.to_json(),
                "verified": self.first_integral_verified,
            }
        return out

    def summary(self) -> str:
        kinds: dict[str, int] = {}
        for _, k in self.indices.finite:
            kinds[k.tag.value] = kinds.get(k.tag.value, 0) + 1
        parts = ", ".join(f"{v} {k}" for k, v in sorted(kinds.items())) or "no finite points"
        ph = "holds" if self.indices.identity_holds else "FAILS"
        return f"{parts}; configuration {self.configuration}; Poincare-Hopf {ph}"


def _num(v) -> float:
    return float(MP.mpf(v))


def analyze(F: PlanarField, options: AnalysisOptions | None = None) -> AnalysisReport:
    """Run the full pipeline on ``F``.

    Critical points, indices and audits are computed for the reduced field.
    Centers are certified by a Hamiltonian of the input when it has zero
    divergence, or else by the derived first integral of a cubic Kolmogorov
    system.
    """
    options = options or AnalysisOptions()
    warnings = []
    G, common = reduced_field(F)
    if common.total_degree > 0:
        warnings.append(f"components share the factor {format_poly(common)}; analyzing the quotient field")
    witness = hamiltonian_of(F) if is_hamiltonian(F) else None
    hk = witness is not None and hk_decompose(witness.H).hk
    kolm = F.f.exact_div(BiPoly.x()) is not None and F.g.exact_div(BiPoly.y()) is not None
    FI = None
    fi_ok = None
    cert = witness
    if witness is None and kolm and F.degree <= 3:
        K = KolmogorovCubic.from_field(F)
        FI, c = first_integral_of(K)
        fi_ok = c.passed if c is not None else None
        if FI is not None and fi_ok:
            cert = FI
        elif FI is None:
            warnings.append("no first integral: the exponent relations are inconsistent")
        else:
            warnings.append("derived first integral failed verification")
    with tolerances(options.det_tol, options.trace_tol):
        finite = finite_critical_points(G, bound=options.bound)
        infinite = infinite_critical_points(G)
        report = poincare_hopf_audit(G, cert, finite=finite, infinite=infinite)
    if any(k.tag == Kind.FOCUS_OR_CENTER for _, k in report.finite):
        warnings.append("some zero-trace points could not be certified as centers")
    bez = bezout_audit(G, finite)
    n, m = max(G.n, G.m), min(G.n, G.m)
    bound = center_bound(n, m, len(infinite) if n == m else 0) if m >= 1 and len(infinite) <= n + 1 else None
    centers = [p.location for p, k in report.finite if k.tag == Kind.CENTER]
    return AnalysisReport(
        field=F,
        reduced=G,
        common_factor=common,
        hamiltonian=witness,
        hk=hk,
        kolmogorov=kolm,
        psi_member=psi_membership(G),
        indices=report,
        bezout=bez,
        center_bound=bound,
        configuration=Configuration.from_points(centers),
        first_integral=FI,
        first_integral_verified=fi_ok,
        warnings=warnings,
    )

