"""Bernstein-Bezier bases for pyramids and friends.

Evaluation, gradients, quadrature and element-matrix assembly for the
collapsed-coordinate Bernstein pyramid basis, plus tetrahedral, triangle
and quad Bernstein bases, trace maps and conditioning studies.
"""

__version__ = "0.1.0"

from .analysis import (
    ConditioningRecord,
    condition_number,
    conditioning_study,
    polynomial_reproduction,
    semi_nodal_basis,
    semi_nodal_eval,
    span_equivalence,
    verify_suites,
)
from .assembly import (
    DofPartition,
    ElementMatrix,
    dirichlet_partition,
    mass_matrix,
    reference_mass_exact,
    restrict,
    stiffness_matrix,
    tet_matrices,
    weak_derivative_matrices,
)
from .bases import (
    BasisDescriptor,
    FaceTraceMap,
    MultiIndex3,
    dimension,
    index_set,
    pyramid_eval,
    pyramid_eval_rst,
    pyramid_grad_rst,
    quad_eval,
    tet_eval,
    tet_grad,
    trace_map,
    triangle_eval,
)
from .errors import DomainError, GeometryError, SingularMatrixError
from .geometry import (
    MetricFactors,
    VertexPyramid,
    jacobian_det,
    map_point,
    metric_factors,
    random_vertex_pyramid,
)
from .polynomials import (
    BernsteinBasis1D,
    JacobiParams,
    bernstein_deriv,
    bernstein_eval,
    bernstein_eval_all,
    bernstein_pair_integral,
    bernstein_pair_integral_weighted,
    jacobi_eval,
)
from .quadrature import QuadratureRule, gauss_jacobi_20, gauss_legendre, pyramid_rule
