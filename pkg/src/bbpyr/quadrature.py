"""Gaussian quadrature on [0,1] and the tensorized pyramid rule.

Rules are generated by Golub-Welsch: the symmetric tridiagonal Jacobi
matrix built from the monic recurrence coefficients is diagonalized and
the weights recovered from the first eigenvector components.  The
collapsed-coordinate pyramid rule carries the (1-c)^2 volume factor
inside its weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError
from .polynomials import jacobi_recurrence

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "gauss_jacobi_01",
    "gauss_jacobi_20",
    "pyramid_rule",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights on a reference domain.

    domain is "interval" (nodes in (0,1)) or "pyramid_cube" (nodes in
    (0,1)^3 with the (1-c)^2 measure folded into the weights).
    """

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    domain: str

    def __len__(self) -> int:
        return len(self.weights)


def _golub_welsch(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Jacobi rule on [-1, 1]."""
    a, b = jacobi_recurrence(n, alpha, beta)
    total = b[0]
    if n == 1:
        return a[:1].copy(), np.array([total])
    nodes, vecs = eigh_tridiagonal(a, np.sqrt(b[1:]))
    weights = total * vecs[0, :] ** 2
    return nodes, weights


def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [0, 1], exact for degree <= 2n-1."""
    if n < 1:
        raise DomainError(f"point count must be >= 1, got {n}")
    t, w = _golub_welsch(n, 0.0, 0.0)
    return QuadratureRule(0.5 * (t + 1.0), 0.5 * w, 2 * n - 1, "interval")


def gauss_jacobi_01(n: int, alpha: int) -> QuadratureRule:
    """n-point Gauss rule on [0, 1] for the weight (1-x)^alpha.

    The weight function is absorbed into the returned weights, which
    therefore sum to 1/(alpha+1).
    """
    if n < 1:
        raise DomainError(f"point count must be >= 1, got {n}")
    t, w = _golub_welsch(n, float(alpha), 0.0)
    # x = (1+t)/2 turns (1-t)^alpha dt into 2^(alpha+1) (1-x)^alpha dx
    return QuadratureRule(0.5 * (t + 1.0), w / 2.0 ** (alpha + 1), 2 * n - 1, "interval")


def gauss_jacobi_20(n: int) -> QuadratureRule:
    """n-point rule on [0, 1] with the (1-c)^2 weight absorbed."""
    return gauss_jacobi_01(n, 2)


def pyramid_rule(n: int) -> QuadratureRule:
    """Tensor rule with n^3 nodes on the unit cube for the pyramid measure.

    Gauss-Legendre in a and b, Gauss-Jacobi (2,0) in c; exact for
    integrands of degree <= 2n-1 separately in a, b, c against the
    (1-c)^2 measure.  Node ordering is a-major: ((a_p, b_q, c_r) at
    flat index (p*n + q)*n + r).
    """
    if n < 1:
        raise DomainError(f"point count must be >= 1, got {n}")
    gl = gauss_legendre(n)
    gj = gauss_jacobi_20(n)
    aa, bb, cc = np.meshgrid(gl.nodes, gl.nodes, gj.nodes, indexing="ij")
    wa, wb, wc = np.meshgrid(gl.weights, gl.weights, gj.weights, indexing="ij")
    nodes = np.column_stack([aa.ravel(), bb.ravel(), cc.ravel()])
    weights = (wa * wb * wc).ravel()
    return QuadratureRule(nodes, weights, 2 * n - 1, "pyramid_cube")
