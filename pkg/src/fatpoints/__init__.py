"""Linear systems of surfaces in P^3 through general fat points."""

from .conjecture import (
    QuadricObstruction,
    Verdict,
    homogeneous_empty,
    homogeneous_special,
    peel_quadrics,
    predicted_dimension,
    quadric_obstruction,
    scan_quadrics,
)
from .core import (
    DivisorClass,
    InvalidInputError,
    LinearSystem,
    binom,
    canonical_class,
    euler_characteristic,
    expected_dimension,
    rr_virtual_dimension,
    triple_product,
    virtual_dimension,
)
from .cremona import (
    ReductionStep,
    ReductionTrace,
    clamp,
    cremona_raw,
    remove_fixed_plane,
    standard_form,
    vir_change_rhs,
)
from .gamma import classify_gamma_graph, gamma_contribution, gamma_cycle, t_value
from .oracle import OracleResult, condition_rows, oracle_dimension

__all__ = [
    "DivisorClass",
    "InvalidInputError",
    "LinearSystem",
    "OracleResult",
    "QuadricObstruction",
    "ReductionStep",
    "ReductionTrace",
    "Verdict",
    "binom",
    "canonical_class",
    "clamp",
    "classify_gamma_graph",
    "condition_rows",
    "cremona_raw",
    "euler_characteristic",
    "expected_dimension",
    "gamma_contribution",
    "gamma_cycle",
    "homogeneous_empty",
    "homogeneous_special",
    "oracle_dimension",
    "peel_quadrics",
    "predicted_dimension",
    "quadric_obstruction",
    "remove_fixed_plane",
    "rr_virtual_dimension",
    "scan_quadrics",
    "standard_form",
    "t_value",
    "triple_product",
    "vir_change_rhs",
    "virtual_dimension",
]
