"""Planar polynomial vector fields: critical points, centers and portraits."""

from .analysis import AnalysisOptions, AnalysisReport, analyze
from .classification import (
    IndexReport,
    Kind,
    PointKind,
    bezout_audit,
    center_bound,
    classify_finite,
    classify_infinite,
    index_winding,
    poincare_hopf_audit,
    psi_membership,
)
from .config import Configuration, canonicalize, equivalent, orbit
from .constructors import (
    ExtremalSpec,
    extremal_hamiltonian,
    normalized_extremal,
    paper_example,
    remark31_system,
)
from .critical_points import (
    CriticalPoint,
    InfinitePoint,
    PlanarField,
    chart_system,
    finite_critical_points,
    infinite_critical_points,
)
from .errors import (
    CommonComponent,
    Degenerate,
    Inconsistent,
    InvalidConfiguration,
    InvalidSpec,
    LineAtInfinityDegenerate,
    NonConvergent,
    NotPrimitive,
    ParseError,
    PolycentersError,
    RadiusUnsafe,
    UnknownExample,
)
from .hamiltonian import (
    HamiltonianWitness,
    field_of,
    hamiltonian_of,
    hk_decompose,
    sector_audit,
    thm41_rules_check,
)
from .kolmogorov import (
    FirstIntegral,
    KolmogorovCubic,
    build_first_integral,
    configuration_of,
    derive_alpha_beta,
    verify_first_integral,
)
from .polynomial import BiPoly, UniPoly, gcd, parse_poly, resultant
from .portrait import PortraitSpec, count_ovals, integrate_orbit, level_curves, render

__version__ = "0.1.0"
