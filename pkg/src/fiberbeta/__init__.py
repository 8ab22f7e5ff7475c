"""Exact-arithmetic invariants of special fibers of arithmetic surfaces.

The package computes, in exact rational arithmetic, the vertical
divisors V_D and U_D attached to horizontal divisors on a special fiber,
the lower-bound invariant beta, and relative-semipositivity
certificates; it aggregates local values into formal sums of prime
logarithms and audits a battery of published reference values (genus-2
reduction types, modular-curve fibers, Fermat fibers of prime exponent).
"""

from .errors import (
    DegreeMismatch,
    ExactnessError,
    FiberBetaError,
    FiberMismatch,
    InvalidGenus,
    InvalidN,
    InvalidParams,
    MalformedInput,
    NonpositiveDegree,
    NotADivisor,
    NotReduced,
    SchemaError,
    SelfCheckFailed,
    SingularBeyondKernel,
)
from .fiber import (
    Check,
    Component,
    DualGraph,
    HorizontalIncidence,
    SpecialFiber,
    ValidationReport,
    dual_graph,
    unit_incidence,
    validate,
)
from .linalg import (
    PsdCertificate,
    PseudoinverseResult,
    RatMatrix,
    build_laplacian,
    effective_resistance,
    pseudoinverse,
    psd_certificate,
)
from .divisors import (
    GammaVector,
    VerticalDivisor,
    full_fiber,
    gamma_by_definition,
    gamma_u,
    horizontal_dot_vertical,
    neron_pairing,
    pair_vertical,
    pair_with_component,
    phi,
    solve_vertical,
    u_dot_component_closed,
)
from .invariants import (
    BetaReport,
    SemipositivityCertificate,
    beta_closed,
    beta_direct,
    k_dot,
    semipositivity_certificate,
    u_dot_k_closed,
)
from .catalog import (
    GraphRealization,
    ReferenceRow,
    acceptance_fibers,
    banana,
    fermat_component_ids,
    fermat_fiber,
    genus2_type,
    table1_reference,
    x1n_fiber,
    x1n_genus,
    x1n_model,
)
from .documents import parse_fiber, serialize_fiber
from .logsum import FormalLogSum, GlobalModel, Place, evaluate, global_beta
from .audit import AuditReport, AuditRow, audit
from .rationals import Rat, format_rat, rat

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "AuditRow",
    "BetaReport",
    "Check",
    "Component",
    "DegreeMismatch",
    "DualGraph",
    "ExactnessError",
    "FiberBetaError",
    "FiberMismatch",
    "FormalLogSum",
    "GammaVector",
    "GlobalModel",
    "GraphRealization",
    "HorizontalIncidence",
    "InvalidGenus",
    "InvalidN",
    "InvalidParams",
    "MalformedInput",
    "NonpositiveDegree",
    "NotADivisor",
    "NotReduced",
    "Place",
    "PsdCertificate",
    "PseudoinverseResult",
    "Rat",
    "RatMatrix",
    "ReferenceRow",
    "SchemaError",
    "SelfCheckFailed",
    "SemipositivityCertificate",
    "SingularBeyondKernel",
    "SpecialFiber",
    "ValidationReport",
    "VerticalDivisor",
    "acceptance_fibers",
    "audit",
    "banana",
    "beta_closed",
    "beta_direct",
    "build_laplacian",
    "dual_graph",
    "effective_resistance",
    "evaluate",
    "fermat_component_ids",
    "fermat_fiber",
    "format_rat",
    "full_fiber",
    "gamma_by_definition",
    "gamma_u",
    "genus2_type",
    "global_beta",
    "horizontal_dot_vertical",
    "k_dot",
    "neron_pairing",
    "pair_vertical",
    "pair_with_component",
    "parse_fiber",
    "phi",
    "psd_certificate",
    "pseudoinverse",
    "rat",
    "semipositivity_certificate",
    "serialize_fiber",
    "solve_vertical",
    "table1_reference",
    "u_dot_component_closed",
    "u_dot_k_closed",
    "unit_incidence",
    "validate",
    "x1n_fiber",
    "x1n_genus",
    "x1n_model",
]
