"""Element matrices on vertex-mapped pyramids and the reference tetrahedron.

All matrices are assembled by quadrature on the collapsed reference cube
with the (1-c)^2 measure in the weights.  For vertex-mapped pyramids the
mass and weak-derivative integrands are polynomial of per-direction
degree at most 2N+1 (the Jacobian and cofactor factors are bilinear in
a,b and constant in c), so the default nq = N+2 points per direction
integrate them exactly.  The stiffness integrand is rational unless the
base is a planar parallelogram, in which case the map is affine; the nq
used is recorded on the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import dimension, pyramid_eval, pyramid_grad_rst, pyramid_indices, tet_eval, tet_grad, tet_indices
from .errors import DomainError
from .geometry import VertexPyramid, metric_factors
from .polynomials import pair_integral_fraction
from .quadrature import gauss_jacobi_01, gauss_legendre, pyramid_rule

__all__ = [
    "ElementMatrix",
    "DofPartition",
    "default_nq",
    "mass_matrix",
    "weak_derivative_matrices",
    "stiffness_matrix",
    "reference_mass_exact",
    "tet_matrices",
    "dirichlet_partition",
    "restrict",
    "matrix_to_csv",
]

KINDS = ("mass", "weak_x", "weak_y", "weak_z", "stiffness")


@dataclass(frozen=True)
class ElementMatrix:
    """Dense element matrix tagged with its provenance.

    presym_asymmetry records the relative Frobenius asymmetry observed
    before symmetrization (None for kinds that are not symmetrized).
    """

    shape: str
    order: int
    kind: str
    nq: int
    entries: np.ndarray
    symmetry: str
    presym_asymmetry: float | None = None

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def default_nq(order: int) -> int:
    """Points per direction used by assembly when none is requested."""
    return order + 2


def _symmetrize(mat: np.ndarray) -> tuple[np.ndarray, float]:
    denom = np.linalg.norm(mat)
    asym = np.linalg.norm(mat - mat.T) / denom if denom > 0 else 0.0
    return 0.5 * (mat + mat.T), asym


def _pyramid_point_data(order: int, pyr: VertexPyramid, nq: int):
    """Basis values, physical gradients and J-weighted quadrature weights."""
    rule = pyramid_rule(nq)
    mf = metric_factors(pyr, rule)
    a, b, c = rule.nodes.T
    vals = pyramid_eval(order, a, b, c)
    gr, gs, gt = pyramid_grad_rst(order, a, b, c)
    # d/dx_d = sum_i d/d(rst_i) * d(rst_i)/dx_d
    inv = mf.rst_dxyz
    phys = [
        gr * inv[:, 0, d][:, None] + gs * inv[:, 1, d][:, None] + gt * inv[:, 2, d][:, None]
        for d in range(3)
    ]
    return vals, phys, rule.weights * mf.jac_det


def mass_matrix(order: int, pyr: VertexPyramid, nq: int | None = None) -> ElementMatrix:
    """Mass matrix of the pyramid basis on a vertex-mapped pyramid.

    Exact for nq >= N+2 (the integrand is the degree-2N Bernstein
    product times the bilinear Jacobian).
    """
    nq = default_nq(order) if nq is None else nq
    if nq < 1:
        raise DomainError(f"nq must be >= 1, got {nq}")
    vals, _, w = _pyramid_point_data(order, pyr, nq)
    mat, asym = _symmetrize(vals.T @ (w[:, None] * vals))
    return ElementMatrix("pyramid", order, "mass", nq, mat, "symmetric", asym)


def weak_derivative_matrices(
    order: int, pyr: VertexPyramid, nq: int | None = None
) -> tuple[ElementMatrix, ElementMatrix, ElementMatrix]:
    """Weak physical-derivative matrices (S^x, S^y, S^z).

    Entry (m, n) is the integral of B_m times the physical derivative of
    B_n; exact by quadrature on vertex-mapped pyramids.
    """
    nq = default_nq(order) if nq is None else nq
    if nq < 1:
        raise DomainError(f"nq must be >= 1, got {nq}")
    vals, phys, w = _pyramid_point_data(order, pyr, nq)
    kinds = ("weak_x", "weak_y", "weak_z")
    return tuple(
        ElementMatrix("pyramid", order, kinds[d], nq, vals.T @ (w[:, None] * phys[d]), "general")
        for d in range(3)
    )


def stiffness_matrix(order: int, pyr: VertexPyramid, nq: int | None = None) -> ElementMatrix:
    """Stiffness matrix by quadrature.

    Inexact for non-affine maps (non-parallelogram base): the inverse
    metric factors are rational in (a, b).  Refinement in nq converges;
    the nq used is recorded on the result.
    """
    nq = default_nq(order) if nq is None else nq
    if nq < 1:
        raise DomainError(f"nq must be >= 1, got {nq}")
    _, phys, w = _pyramid_point_data(order, pyr, nq)
    mat = sum(g.T @ (w[:, None] * g) for g in phys)
    mat, asym = _symmetrize(mat)
    return ElementMatrix("pyramid", order, "stiffness", nq, mat, "symmetric", asym)


def reference_mass_exact(order: int) -> np.ndarray:
    """Reference-pyramid mass matrix from exact separable 1D integrals.

    With J = 1 each entry factorizes as the product of two unweighted
    Bernstein pair integrals (orders N-k and N-n in a and b) and the
    (1-c)^2-weighted pair integral in c.  Every 1D factor is evaluated
    in exact rational arithmetic; this serves as the quadrature oracle.
    """
    idx = pyramid_indices(order)
    npb = len(idx)
    mat = np.empty((npb, npb))
    for p, (i, j, k) in enumerate(idx):
        for q, (l, m, n) in enumerate(idx[p:], start=p):
            val = (
                pair_integral_fraction(order - k, i, order - n, l)
                * pair_integral_fraction(order - k, j, order - n, m)
                * pair_integral_fraction(order, k, order, n, 2)
            )
            mat[p, q] = mat[q, p] = float(val)
    return mat


def _tet_rule(nq: int) -> tuple[np.ndarray, np.ndarray]:
    """Collapsed tensor rule on the reference tetrahedron.

    Maps the cube by z = w, y = v(1-w), x = u(1-v)(1-w); the Duffy
    Jacobian (1-v)(1-w)^2 is absorbed via Gauss-Jacobi weights, so the
    rule is exact for total degree <= 2*nq - 1.
    """
    gl = gauss_legendre(nq)
    g1 = gauss_jacobi_01(nq, 1)
    g2 = gauss_jacobi_01(nq, 2)
    u, v, w = np.meshgrid(gl.nodes, g1.nodes, g2.nodes, indexing="ij")
    wu, wv, ww = np.meshgrid(gl.weights, g1.weights, g2.weights, indexing="ij")
    pts = np.column_stack(
        [
            (u * (1.0 - v) * (1.0 - w)).ravel(),
            (v * (1.0 - w)).ravel(),
            w.ravel(),
        ]
    )
    return pts, (wu * wv * ww).ravel()


def tet_matrices(order: int, nq: int | None = None) -> tuple[ElementMatrix, ElementMatrix]:
    """Mass and stiffness matrices on the reference tetrahedron."""
    nq = default_nq(order) if nq is None else nq
    if nq < 1:
        raise DomainError(f"nq must be >= 1, got {nq}")
    pts, w = _tet_rule(nq)
    lam = np.column_stack([1.0 - pts.sum(axis=1), pts])
    vals = tet_eval(order, lam)
    mass, masym = _symmetrize(vals.T @ (w[:, None] * vals))
    gx, gy, gz = tet_grad(order, pts)
    stiff = gx.T @ (w[:, None] * gx) + gy.T @ (w[:, None] * gy) + gz.T @ (w[:, None] * gz)
    stiff, kasym = _symmetrize(stiff)
    return (
        ElementMatrix("tetrahedron", order, "mass", nq, mass, "symmetric", masym),
        ElementMatrix("tetrahedron", order, "stiffness", nq, stiff, "symmetric", kasym),
    )


@dataclass(frozen=True)
class DofPartition:
    """Disjoint boundary/interior split of the DOF range."""

    shape: str
    order: int
    boundary: tuple[int, ...]
    interior: tuple[int, ...]


def dirichlet_partition(order: int, shape: str) -> DofPartition:
    """Split DOFs by whether the basis function vanishes on all faces.

    Pyramid interior indices are exactly k >= 1, 1 <= i,j <= N-k-1 (the
    trace structure pins everything else to some face); tetrahedron
    interior indices have all four barycentric exponents >= 1.
    """
    if shape == "pyramid":
        interior = [
            p
            for p, (i, j, k) in enumerate(pyramid_indices(order))
            if k >= 1 and 1 <= i <= order - k - 1 and 1 <= j <= order - k - 1
        ]
    elif shape == "tetrahedron":
        interior = [p for p, idx in enumerate(tet_indices(order)) if min(idx) >= 1]
    else:
        raise DomainError(f"no boundary partition for shape {shape!r}")
    ndof = dimension(shape, order)
    boundary = [p for p in range(ndof) if p not in set(interior)]
    return DofPartition(shape, order, tuple(boundary), tuple(interior))


def restrict(matrix: ElementMatrix, part: DofPartition) -> ElementMatrix:
    """Interior-interior principal submatrix (0x0 when no interior DOFs)."""
    ndof = len(part.boundary) + len(part.interior)
    if matrix.dim != ndof:
        raise ValueError(f"matrix dimension {matrix.dim} does not match partition of {ndof}")
    sub = matrix.entries[np.ix_(part.interior, part.interior)]
    return ElementMatrix(
        matrix.shape, matrix.order, matrix.kind, matrix.nq, sub, matrix.symmetry,
        matrix.presym_asymmetry,
    )


def matrix_to_csv(matrix: ElementMatrix) -> str:
    """Row-major CSV of the entries at full (%.17g) precision."""
    if matrix.entries.size == 0:
        return ""
    return "\n".join(",".join("%.17g" % v for v in row) for row in matrix.entries) + "\n"
