"""One-way quantum deficit toolkit for a two-parameter two-qubit X-state family."""

__version__ = "0.1.0"

from .boundaries import (
    BoundaryKind,
    BoundaryPoint,
    ConvergenceError,
    JumpRecord,
    TrajectorySpec,
    bimodality_birth,
    curves_intersection,
    jump_angle_table,
    solve_equal_endpoints,
    solve_halfpi_boundary,
    solve_jump_boundary,
    zero_boundary_axis,
)
from .core import (
    DomainError,
    EndpointDiagnostics,
    StateParams,
    binary_entropy,
    endpoint_diagnostics,
    endpoint_entropy_halfpi,
    endpoint_entropy_zero,
    family_fidelity,
    family_spectrum,
    post_entropy,
    post_spectrum,
    pre_entropy,
    quaternary_entropy,
)
from .deficit import Branch, DeficitResult, branch_values, naive_deficit, one_way_deficit
from .diagram import (
    BoundaryCurve,
    PhaseCell,
    PhaseGrid,
    TrajectoryProfile,
    sweep,
    trace_boundaries,
    trajectory_profile,
)
from .oracle import (
    build_density,
    hermitian_eigenvalues,
    oracle_post_entropy,
    post_measured_state,
    projectors,
)
from .shape import (
    Extremum,
    ShapeClass,
    ShapeReport,
    UnresolvedShape,
    classify_shape,
    endpoint_slope_check,
    interior_minimum,
)

__all__ = [
    "Branch",
    "BoundaryCurve",
    "BoundaryKind",
    "BoundaryPoint",
    "ConvergenceError",
    "DeficitResult",
    "DomainError",
    "EndpointDiagnostics",
    "Extremum",
    "JumpRecord",
    "PhaseCell",
    "PhaseGrid",
    "ShapeClass",
    "ShapeReport",
    "StateParams",
    "TrajectoryProfile",
    "TrajectorySpec",
    "UnresolvedShape",
    "bimodality_birth",
    "binary_entropy",
    "branch_values",
    "build_density",
    "classify_shape",
    "curves_intersection",
    "endpoint_diagnostics",
    "endpoint_entropy_halfpi",
    "endpoint_entropy_zero",
    "endpoint_slope_check",
    "family_fidelity",
    "family_spectrum",
    "hermitian_eigenvalues",
    "interior_minimum",
    "jump_angle_table",
    "naive_deficit",
    "one_way_deficit",
    "oracle_post_entropy",
    "post_entropy",
    "post_measured_state",
    "post_spectrum",
    "pre_entropy",
    "projectors",
    "quaternary_entropy",
    "solve_equal_endpoints",
    "solve_halfpi_boundary",
    "solve_jump_boundary",
    "sweep",
    "trace_boundaries",
    "trajectory_profile",
    "zero_boundary_axis",
]
