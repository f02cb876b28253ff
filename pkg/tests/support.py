"""Shared helpers for the test suite: point sampling and oracles."""

import numpy as np

from bbpyr.bases import pyramid_indices
from bbpyr.geometry import map_point


def interior_rst_points(rng, count, t_hi=0.85):
    """Points inside the reference pyramid with margin from all faces."""
    t = rng.uniform(0.05, t_hi, count)
    r = (1.0 - t) * rng.uniform(0.05, 0.9, count)
    s = (1.0 - t) * rng.uniform(0.05, 0.9, count)
    return r, s, t


def anchor_points(order, rng, jitter=0.25):
    """Well-separated random cube points: one jittered point per basis anchor."""
    pts = []
    for (i, j, k) in pyramid_indices(order):
        m = order - k
        pts.append([
            i / m if m else 0.5,
            j / m if m else 0.5,
            k / order if order else 0.5,
        ])
    pts = np.asarray(pts, dtype=float)
    pts += rng.uniform(-jitter, jitter, pts.shape) / (order + 1)
    return np.clip(pts, 0.0, 1.0)


def monomial_pyramid_integral(p, q, r):
    """Closed-form integral of a^p b^q c^r (1-c)^2 over the unit cube.

    Separable: 1/(p+1) * 1/(q+1) * Beta(r+1, 3).
    """
    return 1.0 / ((p + 1) * (q + 1)) * 2.0 / ((r + 1) * (r + 2) * (r + 3))


def pyramid_volume_by_tets(pyr):
    """Volume of a planar-base pyramid split into two tetrahedra."""
    v1, v2, v3, v4, v5 = pyr.vertices
    t1 = abs(np.linalg.det(np.stack([v2 - v1, v3 - v1, v5 - v1]))) / 6.0
    t2 = abs(np.linalg.det(np.stack([v3 - v1, v4 - v1, v5 - v1]))) / 6.0
    return t1 + t2


def fd_jacobian_rst(pyr, a, b, c, h=1e-6):
    """Finite-difference forward Jacobian d(xyz)/d(rst) at a cube point."""
    r, s, t = a * (1.0 - c), b * (1.0 - c), c

    def phi(rr, ss, tt):
        return map_point(pyr, rr / (1.0 - tt), ss / (1.0 - tt), tt)

    cols = []
    for axis in range(3):
        d = np.zeros(3)
        d[axis] = h
        cols.append((phi(r + d[0], s + d[1], t + d[2]) - phi(r - d[0], s - d[1], t - d[2])) / (2 * h))
    return np.stack(cols, axis=-1)
