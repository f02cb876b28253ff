"""Vertex-mapped pyramid geometry: mapping, Jacobians, metric factors.

A physical pyramid is defined by five vertices: four base corners
ordered counterclockwise to match the cube corners (a,b) = (0,0), (1,0),
(1,1), (0,1) at c = 0, plus the apex.  The mapping blends the bilinear
base interpolant with the apex,

    x(a,b,c) = (1-c) Q(a,b) + c v5,

which reproduces the collapsed map (a,b,c) -> (a(1-c), b(1-c), c) on the
reference vertices.  The Jacobian of the map from the reference pyramid
(r,s,t coordinates) is bilinear in (a,b) and constant in c.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryError
from .quadrature import QuadratureRule, pyramid_rule

__all__ = [
    "REFERENCE_VERTICES",
    "VertexPyramid",
    "MetricFactors",
    "map_point",
    "jacobian_forward",
    "jacobian_det",
    "metric_factors",
    "random_vertex_pyramid",
    "geometry_hash",
]

REFERENCE_VERTICES = np.array(
    [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ]
)


@dataclass(frozen=True)
class VertexPyramid:
    """Five physical vertices; base counterclockwise, apex last."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.shape != (5, 3):
            raise DomainError(f"expected 5 vertices in 3D, got shape {v.shape}")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def reference(cls) -> "VertexPyramid":
        return cls(REFERENCE_VERTICES.copy())


def map_point(pyr: VertexPyramid, a, b, c) -> np.ndarray:
    """Physical image of cube point(s) (a, b, c); shape (..., 3)."""
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    c = np.asarray(c, dtype=float)[..., None]
    v1, v2, v3, v4, v5 = pyr.vertices
    base = (1.0 - a) * (1.0 - b) * v1 + a * (1.0 - b) * v2 + a * b * v3 + (1.0 - a) * b * v4
    return (1.0 - c) * base + c * v5


def jacobian_forward(pyr: VertexPyramid, a, b) -> np.ndarray:
    """Forward Jacobian d(x,y,z)/d(r,s,t) at (a, b); shape (..., 3, 3).

    Independent of c: the columns are the bilinear-blend tangents
    Qa(b), Qb(a) and (v5 - v1) + ab g with g = v1 - v2 + v3 - v4.
    """
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    v1, v2, v3, v4, v5 = pyr.vertices
    g = v1 - v2 + v3 - v4
    col_r = (1.0 - b) * (v2 - v1) + b * (v3 - v4)
    col_s = (1.0 - a) * (v4 - v1) + a * (v3 - v2)
    col_t = (v5 - v1) + a * b * g
    return np.stack([col_r, col_s, col_t], axis=-1)


def jacobian_det(pyr: VertexPyramid, a, b, c=0.0):
    """Determinant of the forward Jacobian (bilinear in a,b, constant in c).

    c is accepted for interface symmetry and must stay below the apex.
    """
    if np.any(np.asarray(c, dtype=float) >= 1.0):
        raise DomainError("Jacobian in rst measure requires c < 1")
    det = np.linalg.det(jacobian_forward(pyr, a, b))
    if np.any(det <= 0.0):
        flat = np.atleast_1d(det).ravel()
        aa = np.broadcast_to(np.asarray(a, dtype=float), np.shape(det)).ravel()
        bb = np.broadcast_to(np.asarray(b, dtype=float), np.shape(det)).ravel()
        m = int(np.argmin(flat))
        raise GeometryError(
            f"non-positive Jacobian {flat[m]:g} at (a,b)=({aa[m]:g}, {bb[m]:g})"
        )
    return float(det) if np.ndim(det) == 0 else det


@dataclass(frozen=True)
class MetricFactors:
    """Per-quadrature-node Jacobian data for one pyramid.

    jac_det[m] is J at node m; rst_dxyz[m] is the 3x3 matrix
    d(r,s,t)/d(x,y,z) obtained by explicit inversion of the forward
    Jacobian.
    """

    jac_det: np.ndarray
    rst_dxyz: np.ndarray


def metric_factors(pyr: VertexPyramid, rule: QuadratureRule) -> MetricFactors:
    """Jacobian determinant and inverse-map factors at the rule's nodes."""
    if rule.domain != "pyramid_cube":
        raise DomainError("metric factors require a pyramid_cube rule")
    fwd = jacobian_forward(pyr, rule.nodes[:, 0], rule.nodes[:, 1])
    det = np.linalg.det(fwd)
    if np.any(det <= 0.0):
        m = int(np.argmin(det))
        raise GeometryError(
            f"non-positive Jacobian {det[m]:g} at node (a,b,c)="
            f"({rule.nodes[m, 0]:g}, {rule.nodes[m, 1]:g}, {rule.nodes[m, 2]:g})"
        )
    return MetricFactors(jac_det=det, rst_dxyz=np.linalg.inv(fwd))


def random_vertex_pyramid(rng: np.random.Generator, base: str = "planar") -> VertexPyramid:
    """Draw a valid (J > 0) vertex pyramid.

    base selects the quadrilateral type: "parallelogram" (random affine
    image of the reference element), "planar" (non-parallelogram but flat
    base) or "nonplanar" (one corner lifted out of the base plane).
    """
    if base not in ("parallelogram", "planar", "nonplanar"):
        raise DomainError(f"unknown base kind {base!r}")
    probe = pyramid_rule(3)
    for _ in range(100):
        amat = np.eye(3) + 0.25 * rng.uniform(-1.0, 1.0, (3, 3))
        if np.linalg.det(amat) <= 0.1:
            continue
        verts = REFERENCE_VERTICES @ amat.T + rng.uniform(-1.0, 1.0, 3)
        if base != "parallelogram":
            e1, e2 = verts[1] - verts[0], verts[3] - verts[0]
            al, be = rng.uniform(0.85, 1.35, 2)
            verts[2] = verts[0] + al * e1 + be * e2
            if base == "nonplanar":
                normal = np.cross(e1, e2)
                verts[2] += rng.uniform(0.1, 0.3) * normal / np.linalg.norm(normal)
        verts[4] += 0.2 * rng.uniform(-1.0, 1.0, 3)
        pyr = VertexPyramid(verts)
        try:
            metric_factors(pyr, probe)
        except GeometryError:
            continue
        return pyr
    raise GeometryError("failed to draw a non-degenerate pyramid")


def geometry_hash(pyr: VertexPyramid) -> str:
    """Stable hash of the vertex coordinates (17 significant digits)."""
    text = ";".join("%.17g,%.17g,%.17g" % tuple(v) for v in pyr.vertices)
    return hashlib.sha256(text.encode()).hexdigest()[:16]
