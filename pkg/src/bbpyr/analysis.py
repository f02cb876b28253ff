"""Conditioning studies, span-equivalence and reproduction checks.

The semi-nodal comparison basis pairs degree-(N-k) Lagrange factors in
a and b with the radial factor (1-c)^{N-k} P^(2(N-k)+3,0)_k(2c-1); it
spans the same space as the Bernstein pyramid basis, which the
cross-projection check verifies numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import assembly
from .bases import (
    FACE_IDS,
    BasisDescriptor,
    dimension,
    face_to_cube,
    face_triangle_barycentric,
    index_set,
    pyramid_eval,
    pyramid_eval_rst,
    pyramid_grad_rst,
    quad_eval,
    triangle_eval,
    trace_map,
)
from .errors import DomainError, SingularMatrixError
from .geometry import VertexPyramid, map_point, random_vertex_pyramid
from .polynomials import JacobiParams, jacobi_eval
from .quadrature import gauss_legendre

__all__ = [
    "ConditioningRecord",
    "SemiNodalBasis",
    "SpanEquivalenceReport",
    "ReproductionReport",
    "StudyResult",
    "SuiteResult",
    "condition_number",
    "lagrange_eval",
    "semi_nodal_basis",
    "semi_nodal_eval",
    "span_equivalence",
    "polynomial_reproduction",
    "monomial_residual",
    "conditioning_study",
    "fit_log10_trend",
    "verify_suites",
]


@dataclass(frozen=True)
class ConditioningRecord:
    """2-norm conditioning of one symmetric positive definite matrix."""

    shape: str
    order: int
    kind: str
    nq: int
    dof_count: int
    lambda_min: float
    lambda_max: float
    cond_2norm: float


def condition_number(matrix: assembly.ElementMatrix) -> ConditioningRecord:
    """Extreme eigenvalues and 2-norm condition number of an SPD matrix.

    Requires a symmetric (within 1e-10 relative Frobenius) matrix of
    nonzero dimension; raises SingularMatrixError if lambda_min <= 0.
    """
    entries = matrix.entries
    if entries.size == 0:
        raise ValueError("matrix has dimension zero")
    scale = np.linalg.norm(entries)
    if scale > 0 and np.linalg.norm(entries - entries.T) / scale > 1e-10:
        raise ValueError("matrix is not symmetric within 1e-10")
    eig = np.linalg.eigvalsh(0.5 * (entries + entries.T))
    lam_min, lam_max = float(eig[0]), float(eig[-1])
    if lam_min <= 0.0:
        raise SingularMatrixError(
            f"{matrix.shape} {matrix.kind} N={matrix.order}: lambda_min={lam_min:g} <= 0"
        )
    return ConditioningRecord(
        matrix.shape, matrix.order, matrix.kind, matrix.nq,
        entries.shape[0], lam_min, lam_max, lam_max / lam_min,
    )


def lagrange_eval(nodes: np.ndarray, x) -> np.ndarray:
    """All Lagrange basis polynomials for the given nodes at x."""
    x = np.asarray(x, dtype=float)
    nodes = np.asarray(nodes, dtype=float)
    n = len(nodes)
    out = np.ones(x.shape + (n,))
    for i in range(n):
        for j in range(n):
            if j != i:
                out[..., i] *= (x - nodes[j]) / (nodes[i] - nodes[j])
    return out


@dataclass(frozen=True)
class SemiNodalBasis:
    """Comparison basis with Lagrange a,b factors and Jacobi radial factor.

    Layer k carries degree-(N-k) Lagrange factors on Gauss-Legendre
    nodes and the radial factor (1-c)^{N-k} P^(2(N-k)+3,0)_k(2c-1);
    the index layout mirrors the Bernstein pyramid ordering.
    """

    order: int
    layer_nodes: tuple[np.ndarray, ...]
    layer_params: tuple[JacobiParams, ...]


def semi_nodal_basis(order: int) -> SemiNodalBasis:
    nodes = tuple(gauss_legendre(order - k + 1).nodes for k in range(order + 1))
    params = tuple(JacobiParams(2 * (order - k) + 3, 0, k) for k in range(order + 1))
    return SemiNodalBasis(order, nodes, params)


def semi_nodal_eval(basis: SemiNodalBasis, a, b, c) -> np.ndarray:
    """All semi-nodal basis values at cube coordinates (a, b, c)."""
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    c = np.asarray(c, dtype=float).reshape(-1)
    n = basis.order
    blocks = []
    for k in range(n + 1):
        la = lagrange_eval(basis.layer_nodes[k], a)
        lb = lagrange_eval(basis.layer_nodes[k], b)
        radial = (1.0 - c) ** (n - k) * jacobi_eval(basis.layer_params[k], 2.0 * c - 1.0)
        blk = la[:, :, None] * lb[:, None, :] * radial[:, None, None]
        blocks.append(blk.reshape(len(a), -1))
    return np.concatenate(blocks, axis=1)


def _normalize_columns(mat: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(mat, axis=0)
    return mat / norms


def _projection_residuals(span: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Relative least-squares residual of each target column in the span."""
    q, _ = np.linalg.qr(_normalize_columns(span))
    resid = targets - q @ (q.T @ targets)
    return np.linalg.norm(resid, axis=0) / np.linalg.norm(targets, axis=0)


@dataclass(frozen=True)
class SpanEquivalenceReport:
    order: int
    tolerance: float
    semi_in_bernstein: float
    bernstein_in_semi: float
    negative_control: float
    min_singular_value: float
    passed: bool


def span_equivalence(order: int, tol: float = 1e-8, seed: int = 0,
                     num_points: int | None = None) -> SpanEquivalenceReport:
    """Cross-projection check that the two pyramid bases span the same space.

    Both bases are sampled at random cube points, column-normalized and
    least-squares-projected onto each other; the report carries the
    maximum relative residual in both directions plus a negative
    control: the degree-(N+1) monomial in c, which lies outside the
    space and must leave a large residual.
    """
    if order > 8:
        raise DomainError("span equivalence supported for N <= 8")
    ndof = dimension("pyramid", order)
    npts = num_points if num_points is not None else max(4 * ndof, 64)
    if npts < 2 * ndof:
        raise DomainError(f"need at least {2 * ndof} sample points")
    rng = np.random.default_rng(seed)
    a, b, c = rng.uniform(size=(3, npts))
    v_bb = pyramid_eval(order, a, b, c)
    v_sn = semi_nodal_eval(semi_nodal_basis(order), a, b, c)
    sing = [np.linalg.svd(_normalize_columns(v), compute_uv=False) for v in (v_bb, v_sn)]
    min_sv = float(min(s[-1] for s in sing))
    if min_sv < 1e-12:
        return SpanEquivalenceReport(order, tol, np.inf, np.inf, 0.0, min_sv, False)
    fwd = float(_projection_residuals(v_bb, _normalize_columns(v_sn)).max())
    rev = float(_projection_residuals(v_sn, _normalize_columns(v_bb)).max())
    control = c ** (order + 1)
    neg = float(_projection_residuals(v_bb, (control / np.linalg.norm(control))[:, None])[0])
    return SpanEquivalenceReport(order, tol, fwd, rev, neg, min_sv, fwd <= tol and rev <= tol)


@dataclass(frozen=True)
class ReproductionReport:
    order: int
    tolerance: float
    residuals: dict = field(repr=False)
    max_residual: float = 0.0
    passed: bool = False


def _monomial_setup(order: int, pyr: VertexPyramid, seed: int, num_points: int | None):
    ndof = dimension("pyramid", order)
    npts = num_points if num_points is not None else max(4 * ndof, 128)
    rng = np.random.default_rng(seed)
    a, b, c = rng.uniform(size=(3, npts))
    vand = pyramid_eval(order, a, b, c)
    phys = map_point(pyr, a, b, c)
    return vand, phys


def monomial_residual(order: int, pyr: VertexPyramid, powers: tuple[int, int, int],
                      seed: int = 0, num_points: int | None = None) -> float:
    """Relative residual of fitting one physical monomial in the basis."""
    vand, phys = _monomial_setup(order, pyr, seed, num_points)
    al, be, ga = powers
    f = phys[:, 0] ** al * phys[:, 1] ** be * phys[:, 2] ** ga
    return float(_projection_residuals(vand, (f / np.linalg.norm(f))[:, None])[0])


def polynomial_reproduction(order: int, pyr: VertexPyramid, tol: float = 1e-8,
                            seed: int = 0, num_points: int | None = None) -> ReproductionReport:
    """Fit every monomial of total degree <= N on a mapped pyramid.

    The basis spans all such monomials under any vertex mapping, so the
    least-squares residuals at random sample points must vanish.
    """
    vand, phys = _monomial_setup(order, pyr, seed, num_points)
    q, _ = np.linalg.qr(_normalize_columns(vand))
    residuals = {}
    for total in range(order + 1):
        for al in range(total + 1):
            for be in range(total - al + 1):
                ga = total - al - be
                f = phys[:, 0] ** al * phys[:, 1] ** be * phys[:, 2] ** ga
                f = f / np.linalg.norm(f)
                residuals[(al, be, ga)] = float(np.linalg.norm(f - q @ (q.T @ f)))
    worst = max(residuals.values())
    return ReproductionReport(order, tol, residuals, worst, worst <= tol)


@dataclass(frozen=True)
class StudyResult:
    records: list
    skipped: list


def conditioning_study(orders, shapes=("pyramid", "tetrahedron"),
                       kinds=("mass", "stiffness"), nq: int | None = None,
                       restrict_mass: bool = False,
                       restrict_stiffness: bool = True) -> StudyResult:
    """Condition numbers of reference-element matrices over a range of orders.

    Stiffness matrices are reduced to the interior (Dirichlet) block by
    default; orders whose restricted matrix is empty are skipped with a
    reason.  Records come back sorted by (shape, kind, N).
    """
    records, skipped = [], []
    reference = VertexPyramid.reference()
    for shape in shapes:
        for kind in kinds:
            for order in orders:
                if shape == "pyramid":
                    mat = (
                        assembly.mass_matrix(order, reference, nq)
                        if kind == "mass"
                        else assembly.stiffness_matrix(order, reference, nq)
                    )
                else:
                    mat = assembly.tet_matrices(order, nq)[0 if kind == "mass" else 1]
                do_restrict = restrict_stiffness if kind == "stiffness" else restrict_mass
                if do_restrict:
                    part = assembly.dirichlet_partition(order, shape)
                    if not part.interior:
                        skipped.append((shape, kind, order, "empty interior partition"))
                        continue
                    mat = assembly.restrict(mat, part)
                try:
                    records.append(condition_number(mat))
                except SingularMatrixError as exc:
                    skipped.append((shape, kind, order, str(exc)))
    records.sort(key=lambda r: (r.shape, r.kind, r.order))
    return StudyResult(records, skipped)


def fit_log10_trend(orders, values) -> tuple[float, float, float]:
    """Least-squares line through (order, log10 value); returns slope, intercept, R^2."""
    x = np.asarray(orders, dtype=float)
    y = np.log10(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(((y - fitted) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


@dataclass(frozen=True)
class SuiteResult:
    passed: bool
    max_error: float
    tolerance: float
    detail: dict = field(default_factory=dict)


def _suite_partition_positivity(n_max, rng, fault):
    pts = rng.uniform(size=(200, 3))
    part_err = pos_err = 0.0
    for order in range(1, n_max + 1):
        vals = pyramid_eval(order, pts[:, 0], pts[:, 1], pts[:, 2])
        if fault:
            vals = vals.copy()
            vals[:, 0] += fault
        part_err = max(part_err, float(np.abs(vals.sum(axis=1) - 1.0).max()))
        pos_err = max(pos_err, float(max(0.0, -vals.min())))
    return part_err, pos_err


def _suite_trace(n_max, rng):
    ident_err = leak_err = 0.0
    for order in range(1, min(n_max, 6) + 1):
        for face in FACE_IDS:
            u, v = rng.uniform(size=(2, 50))
            a, b, c = face_to_cube(face, u, v)
            vals = pyramid_eval(order, a, b, c)
            if face == "quad_base":
                fvals = quad_eval(order, u, v)
                fidx = index_set(BasisDescriptor("quad", order))
            else:
                fvals = triangle_eval(order, face_triangle_barycentric(u, v))
                fidx = index_set(BasisDescriptor("triangle", order))
            pyr_idx = index_set(BasisDescriptor("pyramid", order))
            tmap = trace_map(order, face)
            paired = set()
            for pidx, fid in tmap.pairs:
                p, f = pyr_idx.index(pidx), fidx.index(fid)
                paired.add(p)
                ident_err = max(ident_err, float(np.abs(vals[:, p] - fvals[:, f]).max()))
            unpaired = [p for p in range(len(pyr_idx)) if p not in paired]
            if unpaired:
                leak_err = max(leak_err, float(np.abs(vals[:, unpaired]).max()))
    return ident_err, leak_err


def _interior_rst_points(rng, count):
    t = rng.uniform(0.05, 0.85, count)
    r = (1.0 - t) * rng.uniform(0.05, 0.9, count)
    s = (1.0 - t) * rng.uniform(0.05, 0.9, count)
    return r, s, t


def _suite_gradient(n_max, rng, h=1e-5):
    err = apex_err = 0.0
    for order in range(1, min(n_max, 6) + 1):
        r, s, t = _interior_rst_points(rng, 100)
        a, b = r / (1.0 - t), s / (1.0 - t)
        grads = pyramid_grad_rst(order, a, b, t)
        apex_err = max(apex_err, float(np.abs(grads[0][:, -1]).max()),
                       float(np.abs(grads[1][:, -1]).max()))
        for axis, ana in enumerate(grads):
            shift = np.zeros((3, len(t)))
            shift[axis] = h
            up = pyramid_eval_rst(order, r + shift[0], s + shift[1], t + shift[2])
            dn = pyramid_eval_rst(order, r - shift[0], s - shift[1], t - shift[2])
            fd = (up - dn) / (2.0 * h)
            rel = np.abs(ana - fd) / np.maximum(1.0, np.abs(ana))
            err = max(err, float(rel.max()))
    return err, apex_err


def _suite_span(n_max, seed):
    worst = 0.0
    neg_min = np.inf
    for order in range(1, min(n_max, 4) + 1):
        rep = span_equivalence(order, seed=seed)
        worst = max(worst, rep.semi_in_bernstein, rep.bernstein_in_semi)
        neg_min = min(neg_min, rep.negative_control)
    return worst, float(neg_min)


def _suite_reproduction(n_max, seed):
    rng = np.random.default_rng(seed)
    pyramids = [
        random_vertex_pyramid(rng, "parallelogram"),
        random_vertex_pyramid(rng, "parallelogram"),
        random_vertex_pyramid(rng, "planar"),
        random_vertex_pyramid(rng, "planar"),
        random_vertex_pyramid(rng, "nonplanar"),
    ]
    worst = 0.0
    for order in range(1, min(n_max, 4) + 1):
        for pyr in pyramids:
            rep = polynomial_reproduction(order, pyr, seed=seed)
            worst = max(worst, rep.max_residual)
    return worst


def verify_suites(n_max: int, seed: int = 0, fault: float = 0.0) -> dict[str, SuiteResult]:
    """Run the executable property suites up to order n_max (<= 8).

    fault injects an error into the basis values seen by the
    partition-of-unity suite; it exists so the failure path of the
    verification pipeline can be exercised deterministically.
    """
    if not 1 <= n_max <= 8:
        raise DomainError(f"n_max must be within 1..8, got {n_max}")
    rng = np.random.default_rng(seed)
    part_err, pos_err = _suite_partition_positivity(n_max, rng, fault)
    ident_err, leak_err = _suite_trace(n_max, rng)
    grad_err, apex_err = _suite_gradient(n_max, rng)
    span_err, neg_ctl = _suite_span(n_max, seed)
    repro_err = _suite_reproduction(n_max, seed)
    return {
        "partition_of_unity": SuiteResult(part_err <= 1e-12, part_err, 1e-12),
        "positivity": SuiteResult(pos_err <= 0.0, pos_err, 0.0),
        "trace": SuiteResult(
            ident_err <= 1e-12 and leak_err <= 1e-13, max(ident_err, leak_err), 1e-12,
            {"identity_error": ident_err, "vanishing_error": leak_err, "vanishing_tolerance": 1e-13},
        ),
        "gradient": SuiteResult(
            grad_err <= 1e-6 and apex_err == 0.0, grad_err, 1e-6,
            {"top_layer_rs_component": apex_err},
        ),
        "span_equivalence": SuiteResult(
            span_err <= 1e-8 and neg_ctl >= 1e-3, span_err, 1e-8,
            {"negative_control": neg_ctl, "negative_control_floor": 1e-3},
        ),
        "polynomial_reproduction": SuiteResult(repro_err <= 1e-8, repro_err, 1e-8),
    }
