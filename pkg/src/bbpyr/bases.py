"""Ordered Bernstein-Bezier bases on triangle, quad, tetrahedron and pyramid.

The pyramid basis lives on the unit cube (a,b,c) related to the pyramid
coordinates by r = a(1-c), s = b(1-c), t = c; member (i,j,k) is
B^{N-k}_i(a) B^{N-k}_j(b) B^N_k(c) with 0 <= k <= N, 0 <= i,j <= N-k.

DOF ordering contract
---------------------
pyramid:      k outermost (0..N), then i (0..N-k), then j (0..N-k).
quad:         (i, j) lexicographic, i outermost.
triangle/tet: barycentric exponents in lexicographic *descending* order,
              so order 1 yields the barycentric coordinates themselves.

The quad-face block of the pyramid (k = 0) is therefore contiguous at
the front, and the apex function (0,0,N) is always last.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .polynomials import bernstein_all, bernstein_deriv_all

__all__ = [
    "SHAPES",
    "FACE_IDS",
    "BasisDescriptor",
    "FaceTraceMap",
    "MultiIndex3",
    "dimension",
    "index_set",
    "pyramid_eval",
    "pyramid_eval_rst",
    "pyramid_grad_rst",
    "triangle_eval",
    "quad_eval",
    "tet_eval",
    "tet_grad",
    "trace_map",
    "face_to_cube",
    "face_triangle_barycentric",
]

SHAPES = ("triangle", "quad", "tetrahedron", "pyramid")
FACE_IDS = ("quad_base", "tri_a0", "tri_a1", "tri_b0", "tri_b1")


def dimension(shape: str, order: int) -> int:
    """Number of basis functions for the given shape and order."""
    if order < 0:
        raise DomainError(f"order must be nonnegative, got {order}")
    n = order
    if shape == "pyramid":
        return (n + 1) * (n + 2) * (2 * n + 3) // 6
    if shape == "tetrahedron":
        return (n + 1) * (n + 2) * (n + 3) // 6
    if shape == "triangle":
        return (n + 1) * (n + 2) // 2
    if shape == "quad":
        return (n + 1) ** 2
    raise DomainError(f"unknown shape {shape!r}")


@dataclass(frozen=True)
class BasisDescriptor:
    """An ordered basis: element shape plus polynomial order."""

    shape: str
    order: int

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise DomainError(f"unknown shape {self.shape!r}")
        if self.order < 0:
            raise DomainError(f"order must be nonnegative, got {self.order}")

    @property
    def dimension(self) -> int:
        return dimension(self.shape, self.order)


class MultiIndex3(NamedTuple):
    """Pyramid basis multi-index (i, j, k)."""

    i: int
    j: int
    k: int

    def admissible(self, order: int) -> bool:
        m = order - self.k
        return 0 <= self.k <= order and 0 <= self.i <= m and 0 <= self.j <= m


def pyramid_indices(order: int) -> list[MultiIndex3]:
    return [
        MultiIndex3(i, j, k)
        for k in range(order + 1)
        for i in range(order - k + 1)
        for j in range(order - k + 1)
    ]


def quad_indices(order: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(order + 1) for j in range(order + 1)]


def triangle_indices(order: int) -> list[tuple[int, int, int]]:
    return [
        (i, j, order - i - j)
        for i in range(order, -1, -1)
        for j in range(order - i, -1, -1)
    ]


def tet_indices(order: int) -> list[tuple[int, int, int, int]]:
    return [
        (i, j, k, order - i - j - k)
        for i in range(order, -1, -1)
        for j in range(order - i, -1, -1)
        for k in range(order - i - j, -1, -1)
    ]


def index_set(desc: BasisDescriptor) -> list[tuple[int, ...]]:
    """Multi-indices of the basis in the documented ordering."""
    if desc.shape == "pyramid":
        return pyramid_indices(desc.order)
    if desc.shape == "quad":
        return quad_indices(desc.order)
    if desc.shape == "triangle":
        return triangle_indices(desc.order)
    return tet_indices(desc.order)


def _as_batch(*coords):
    """Broadcast coordinates to a common flat batch; report scalar-ness."""
    arrs = np.broadcast_arrays(*[np.asarray(c, dtype=float) for c in coords])
    scalar = arrs[0].ndim == 0
    return [a.reshape(-1) for a in arrs], arrs[0].shape, scalar


def pyramid_eval(order: int, a, b, c) -> np.ndarray:
    """All pyramid basis values at cube coordinates (a, b, c).

    Accepts scalars or broadcastable arrays; the basis index is the last
    axis, following the documented DOF ordering.  The values are
    nonnegative on the cube and sum to 1.
    """
    (av, bv, cv), shape, scalar = _as_batch(a, b, c)
    n = order
    a_tab = [bernstein_all(m, av) for m in range(n + 1)]
    b_tab = [bernstein_all(m, bv) for m in range(n + 1)]
    c_all = bernstein_all(n, cv)
    blocks = []
    for k in range(n + 1):
        m = n - k
        blk = a_tab[m][:, :, None] * b_tab[m][:, None, :] * c_all[:, k][:, None, None]
        blocks.append(blk.reshape(len(av), -1))
    vals = np.concatenate(blocks, axis=1)
    return vals[0] if scalar else vals.reshape(shape + (vals.shape[-1],))


def _apex_indicator(order: int) -> np.ndarray:
    out = np.zeros(dimension("pyramid", order))
    out[-1] = 1.0  # (0, 0, N) is last in the ordering
    return out


def pyramid_eval_rst(order: int, r, s, t) -> np.ndarray:
    """Pyramid basis values at pyramid coordinates (r, s, t).

    Requires 0 <= t <= 1 and 0 <= r,s <= 1-t; the apex t = 1 returns the
    continuous limit (indicator of the apex function).
    """
    (rv, sv, tv), shape, scalar = _as_batch(r, s, t)
    tol = 1e-12
    if np.any(tv < -tol) or np.any(tv > 1.0 + tol):
        raise DomainError("t outside [0, 1]")
    lim = 1.0 - tv
    if np.any(rv < -tol) or np.any(sv < -tol) or np.any(rv > lim + tol) or np.any(sv > lim + tol):
        raise DomainError("point outside the reference pyramid")
    vals = np.empty((len(tv), dimension("pyramid", order)))
    apex = tv >= 1.0
    if np.any(apex):
        vals[apex] = _apex_indicator(order)
    if np.any(~apex):
        rr, ss, tt = rv[~apex], sv[~apex], tv[~apex]
        av = np.clip(rr / (1.0 - tt), 0.0, 1.0)
        bv = np.clip(ss / (1.0 - tt), 0.0, 1.0)
        vals[~apex] = pyramid_eval(order, av, bv, tt)
    return vals[0] if scalar else vals.reshape(shape + (vals.shape[-1],))


def pyramid_grad_rst(order: int, a, b, c) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradients (d/dr, d/ds, d/dt) of all pyramid basis functions.

    The point is given in cube coordinates with c < 1 strictly.  The
    singular-looking factor B^N_k(c)/(1-c) is evaluated in its
    regularized form (N/(N-k)) B^{N-1}_k(c) for k < N; the k = N
    components of d/dr and d/ds are identically zero.
    """
    (av, bv, cv), shape, scalar = _as_batch(a, b, c)
    if np.any(cv >= 1.0):
        raise DomainError("gradient undefined at the apex c = 1")
    n = order
    npts = len(av)
    a_tab = [bernstein_all(m, av) for m in range(n + 1)]
    b_tab = [bernstein_all(m, bv) for m in range(n + 1)]
    da_tab = [bernstein_deriv_all(m, av) for m in range(n + 1)]
    db_tab = [bernstein_deriv_all(m, bv) for m in range(n + 1)]
    dc_all = bernstein_deriv_all(n, cv)
    c_low = bernstein_all(n - 1, cv) if n > 0 else None
    dr_blocks, ds_blocks, dt_blocks = [], [], []
    for k in range(n + 1):
        m = n - k
        ai, bj = a_tab[m][:, :, None], b_tab[m][:, None, :]
        dck = dc_all[:, k][:, None, None]
        if k < n:
            reg = (n / m) * c_low[:, k]
            reg = reg[:, None, None]
            dr = da_tab[m][:, :, None] * bj * reg
            ds = ai * db_tab[m][:, None, :] * reg
            dt = av[:, None, None] * dr + bv[:, None, None] * ds + ai * bj * dck
        else:
            dr = np.zeros((npts, 1, 1))
            ds = np.zeros((npts, 1, 1))
            dt = dck.copy()
        dr_blocks.append(dr.reshape(npts, -1))
        ds_blocks.append(ds.reshape(npts, -1))
        dt_blocks.append(dt.reshape(npts, -1))
    out = tuple(np.concatenate(blks, axis=1) for blks in (dr_blocks, ds_blocks, dt_blocks))
    if scalar:
        return tuple(g[0] for g in out)
    return tuple(g.reshape(shape + (g.shape[-1],)) for g in out)


def _pow_table(x: np.ndarray, order: int) -> np.ndarray:
    """Powers x^0 .. x^order along a new last axis."""
    out = np.ones(x.shape + (order + 1,))
    for e in range(1, order + 1):
        out[..., e] = out[..., e - 1] * x
    return out


def _check_barycentric(lam: np.ndarray, count: int) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    if lam.shape[-1] != count:
        raise DomainError(f"expected {count} barycentric coordinates")
    if np.any(np.abs(lam.sum(axis=-1) - 1.0) > 1e-12):
        raise DomainError("barycentric coordinates must sum to 1")
    return lam


def triangle_eval(order: int, lam) -> np.ndarray:
    """Triangle basis values at barycentric coordinates lam = (l1, l2, l3)."""
    lam = _check_barycentric(lam, 3)
    p1 = _pow_table(lam[..., 0], order)
    p2 = _pow_table(lam[..., 1], order)
    p3 = _pow_table(lam[..., 2], order)
    cols = []
    for i, j, k in triangle_indices(order):
        cnk = comb(order, i) * comb(order - i, j)
        cols.append(cnk * p1[..., i] * p2[..., j] * p3[..., k])
    return np.stack(cols, axis=-1)


def quad_eval(order: int, a, b) -> np.ndarray:
    """Tensor-product quad basis values B^N_i(a) B^N_j(b)."""
    (av, bv), shape, scalar = _as_batch(a, b)
    va = bernstein_all(order, av)
    vb = bernstein_all(order, bv)
    vals = (va[:, :, None] * vb[:, None, :]).reshape(len(av), -1)
    return vals[0] if scalar else vals.reshape(shape + (vals.shape[-1],))


def tet_eval(order: int, lam) -> np.ndarray:
    """Tetrahedron basis values at barycentric coordinates (l1..l4)."""
    lam = _check_barycentric(lam, 4)
    pows = [_pow_table(lam[..., m], order) for m in range(4)]
    cols = []
    for i, j, k, l in tet_indices(order):
        cnk = comb(order, i) * comb(order - i, j) * comb(order - i - j, k)
        cols.append(cnk * pows[0][..., i] * pows[1][..., j] * pows[2][..., k] * pows[3][..., l])
    return np.stack(cols, axis=-1)


# reference tetrahedron (origin + unit axes): lam = (1-x-y-z, x, y, z)
_TET_LAMBDA_GRADS = np.array(
    [[-1.0, -1.0, -1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
)


def tet_grad(order: int, points) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradients of the tetrahedron basis w.r.t. reference coordinates.

    points has shape (..., 3) in the reference tetrahedron with vertices
    at the origin and the unit axes.
    """
    pts = np.asarray(points, dtype=float)
    lam = np.stack(
        [1.0 - pts[..., 0] - pts[..., 1] - pts[..., 2], pts[..., 0], pts[..., 1], pts[..., 2]],
        axis=-1,
    )
    pows = [_pow_table(lam[..., m], order) for m in range(4)]
    grads = [[], [], []]
    for idx in tet_indices(order):
        cnk = comb(order, idx[0]) * comb(order - idx[0], idx[1]) * comb(
            order - idx[0] - idx[1], idx[2]
        )
        g = np.zeros(lam.shape[:-1] + (3,))
        for m in range(4):
            e = idx[m]
            if e == 0:
                continue
            partial = e * np.ones(lam.shape[:-1])
            for mm in range(4):
                partial = partial * pows[mm][..., idx[mm] - 1 if mm == m else idx[mm]]
            g += partial[..., None] * _TET_LAMBDA_GRADS[m]
        grads[0].append(cnk * g[..., 0])
        grads[1].append(cnk * g[..., 1])
        grads[2].append(cnk * g[..., 2])
    return tuple(np.stack(cols, axis=-1) for cols in grads)


@dataclass(frozen=True)
class FaceTraceMap:
    """Pairing between pyramid DOFs with nonzero trace and face DOFs.

    pairs lists (pyramid (i,j,k), face multi-index); face indices are
    (i,j) for the quad base and barycentric triples for the triangular
    faces.  Every pyramid index not listed vanishes identically on the
    face.
    """

    face_id: str
    order: int
    pairs: tuple[tuple[MultiIndex3, tuple[int, ...]], ...]


def trace_map(order: int, face_id: str) -> FaceTraceMap:
    """Trace pairing of the pyramid basis on one of its five faces.

    Triangular faces are parameterized by the surviving cube coordinate
    pair (u, v) with v the collapsed direction c; the face point maps to
    barycentric coordinates ((1-u)(1-v), u(1-v), v) of the face triangle.
    """
    n = order
    if face_id == "quad_base":
        pairs = [(MultiIndex3(i, j, 0), (i, j)) for i in range(n + 1) for j in range(n + 1)]
    elif face_id == "tri_a0":
        pairs = [(MultiIndex3(0, j, k), (n - k - j, j, k))
                 for k in range(n + 1) for j in range(n - k + 1)]
    elif face_id == "tri_a1":
        pairs = [(MultiIndex3(n - k, j, k), (n - k - j, j, k))
                 for k in range(n + 1) for j in range(n - k + 1)]
    elif face_id == "tri_b0":
        pairs = [(MultiIndex3(i, 0, k), (n - k - i, i, k))
                 for k in range(n + 1) for i in range(n - k + 1)]
    elif face_id == "tri_b1":
        pairs = [(MultiIndex3(i, n - k, k), (n - k - i, i, k))
                 for k in range(n + 1) for i in range(n - k + 1)]
    else:
        raise DomainError(f"unknown face {face_id!r}")
    return FaceTraceMap(face_id, n, tuple(pairs))


def face_to_cube(face_id: str, u, v) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Embed face parameters (u, v) in [0,1]^2 into cube coordinates."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    zero, one = np.zeros_like(u), np.ones_like(u)
    if face_id == "quad_base":
        return u, v, np.zeros_like(u)
    if face_id == "tri_a0":
        return zero, u, v
    if face_id == "tri_a1":
        return one, u, v
    if face_id == "tri_b0":
        return u, zero, v
    if face_id == "tri_b1":
        return u, one, v
    raise DomainError(f"unknown face {face_id!r}")


def face_triangle_barycentric(u, v) -> np.ndarray:
    """Barycentric coordinates of a triangular-face point (u, v)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.stack([(1.0 - u) * (1.0 - v), u * (1.0 - v), v], axis=-1)
