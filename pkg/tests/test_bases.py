import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbpyr.bases import (
    FACE_IDS,
    BasisDescriptor,
    MultiIndex3,
    dimension,
    face_to_cube,
    face_triangle_barycentric,
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
from bbpyr.errors import DomainError
from support import anchor_points, interior_rst_points


def test_dimension_formulas():
    assert dimension("pyramid", 1) == 5
    assert dimension("pyramid", 2) == 14
    assert dimension("pyramid", 3) == 30
    assert dimension("tetrahedron", 2) == 10
    assert dimension("triangle", 3) == 10
    assert dimension("quad", 2) == 9


def test_pyramid_index_ordering():
    assert index_set(BasisDescriptor("pyramid", 1)) == [
        (0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0), (0, 0, 1),
    ]
    idx2 = index_set(BasisDescriptor("pyramid", 2))
    assert len(idx2) == 14
    assert idx2[-1] == (0, 0, 2)
    assert all(idx.admissible(2) for idx in idx2)
    assert not MultiIndex3(2, 0, 1).admissible(2)  # i > N - k
    assert not MultiIndex3(0, 0, 3).admissible(2)


def test_simplex_index_ordering():
    assert index_set(BasisDescriptor("triangle", 1)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert index_set(BasisDescriptor("tetrahedron", 1)) == [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    ]
    assert len(index_set(BasisDescriptor("tetrahedron", 2))) == 10


@given(
    a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0), c=st.floats(0.0, 1.0),
    order=st.integers(0, 8),
)
@settings(max_examples=100, deadline=None)
def test_pyramid_partition_of_unity(a, b, c, order):
    vals = pyramid_eval(order, a, b, c)
    assert abs(vals.sum() - 1.0) <= 1e-13
    assert vals.min() >= 0.0


def test_pyramid_eval_collapsed_face():
    vals = pyramid_eval(2, 0.3, 0.8, 1.0)
    expected = np.zeros(14)
    expected[-1] = 1.0
    np.testing.assert_allclose(vals, expected, atol=1e-15)


def test_pyramid_eval_vertex_interpolation():
    vals = pyramid_eval(1, 0.0, 0.0, 0.0)
    np.testing.assert_allclose(vals, [1, 0, 0, 0, 0], atol=1e-15)


def test_rst_agrees_with_cube_eval():
    rng = np.random.default_rng(5)
    for order in range(1, 6):
        a, b, c = rng.uniform(size=(3, 40)) * [[1.0], [1.0], [0.999]]
        r, s, t = a * (1 - c), b * (1 - c), c
        np.testing.assert_allclose(
            pyramid_eval_rst(order, r, s, t), pyramid_eval(order, a, b, c), atol=1e-14
        )


def test_rst_apex_indicator():
    vals = pyramid_eval_rst(3, 0.0, 0.0, 1.0)
    assert vals[-1] == 1.0
    assert np.all(vals[:-1] == 0.0)


def test_rst_vertex_lagrange_property():
    # order 1 basis is a Lagrange set at the five vertices
    verts = np.array([
        [0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0],
    ])
    table = pyramid_eval_rst(1, verts[:, 0], verts[:, 1], verts[:, 2])
    assert np.allclose(np.sort(np.abs(table), axis=1)[:, :-1], 0.0, atol=1e-14)
    assert np.allclose(table.sum(axis=0), 1.0, atol=1e-14)
    assert np.linalg.matrix_rank(table) == 5


def test_rst_domain_errors():
    with pytest.raises(DomainError):
        pyramid_eval_rst(2, 0.6, 0.0, 0.5)  # r > 1 - t
    with pytest.raises(DomainError):
        pyramid_eval_rst(2, 0.0, 0.0, 1.5)
    with pytest.raises(DomainError):
        pyramid_eval_rst(2, -0.2, 0.1, 0.3)


def test_apex_continuity_along_rays():
    rng = np.random.default_rng(11)
    order = 4
    indicator = np.zeros(dimension("pyramid", order))
    indicator[-1] = 1.0
    for _ in range(10):
        a, b = rng.uniform(size=2)
        eps = 1e-12
        vals = pyramid_eval_rst(order, a * eps, b * eps, 1.0 - eps)
        assert np.abs(vals - indicator).max() < 1e-10


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(2)
    h = 1e-5
    for order in range(1, 7):
        r, s, t = interior_rst_points(rng, 40)
        a, b = r / (1 - t), s / (1 - t)
        grads = pyramid_grad_rst(order, a, b, t)
        for axis in range(3):
            d = np.zeros((3, len(t)))
            d[axis] = h
            fd = (
                pyramid_eval_rst(order, r + d[0], s + d[1], t + d[2])
                - pyramid_eval_rst(order, r - d[0], s - d[1], t - d[2])
            ) / (2 * h)
            rel = np.abs(grads[axis] - fd) / np.maximum(1.0, np.abs(grads[axis]))
            assert rel.max() < 1e-6


def test_gradient_apex_function_is_unit_t():
    gr, gs, gt = pyramid_grad_rst(1, 0.37, 0.62, 0.55)
    assert gr[-1] == 0.0 and gs[-1] == 0.0
    assert gt[-1] == pytest.approx(1.0, abs=1e-15)


def test_gradient_components_sum_to_zero():
    rng = np.random.default_rng(3)
    a, b, c = rng.uniform(size=(3, 20)) * [[1.0], [1.0], [0.99]]
    for order in range(1, 6):
        for g in pyramid_grad_rst(order, a, b, c):
            assert np.abs(g.sum(axis=-1)).max() < 1e-11


def test_gradient_top_layer_rs_zero():
    rng = np.random.default_rng(4)
    a, b, c = rng.uniform(size=(3, 30)) * [[1.0], [1.0], [0.99]]
    for order in range(1, 7):
        gr, gs, _ = pyramid_grad_rst(order, a, b, c)
        assert np.all(gr[:, -1] == 0.0)
        assert np.all(gs[:, -1] == 0.0)


def test_gradient_rejects_apex():
    with pytest.raises(DomainError):
        pyramid_grad_rst(2, 0.5, 0.5, 1.0)


def test_triangle_eval():
    np.testing.assert_allclose(triangle_eval(1, [0.2, 0.3, 0.5]), [0.2, 0.3, 0.5], atol=1e-15)
    centroid = triangle_eval(2, [1 / 3, 1 / 3, 1 / 3])
    # multinomial evaluation: C=1 at vertices, C=2 on edges
    for idx, val in zip(index_set(BasisDescriptor("triangle", 2)), centroid):
        expected = (2 if 1 in idx else 1) / 9
        assert val == pytest.approx(expected, abs=1e-15)
    rng = np.random.default_rng(6)
    lam = rng.dirichlet([1, 1, 1], size=100)
    sums = triangle_eval(5, lam).sum(axis=-1)
    assert np.abs(sums - 1.0).max() < 1e-13


def test_triangle_rejects_bad_barycentric():
    with pytest.raises(DomainError):
        triangle_eval(2, [0.5, 0.2, 0.2])


def test_quad_eval():
    np.testing.assert_allclose(quad_eval(1, 0.0, 0.0), [1, 0, 0, 0], atol=1e-15)
    rng = np.random.default_rng(7)
    a, b = rng.uniform(size=(2, 50))
    assert np.abs(quad_eval(4, a, b).sum(axis=-1) - 1.0).max() < 1e-13


def test_tet_eval():
    np.testing.assert_allclose(tet_eval(1, [0.1, 0.2, 0.3, 0.4]), [0.1, 0.2, 0.3, 0.4], atol=1e-15)
    rng = np.random.default_rng(8)
    lam = rng.dirichlet([1, 1, 1, 1], size=50)
    assert np.abs(tet_eval(4, lam).sum(axis=-1) - 1.0).max() < 1e-13


def test_tet_grad():
    pts = np.array([[0.2, 0.3, 0.1]])
    gx, gy, gz = tet_grad(1, pts)
    np.testing.assert_allclose(gx[0], [-1, 1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(gy[0], [-1, 0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(gz[0], [-1, 0, 0, 1], atol=1e-15)
    # gradient of the unity partition vanishes
    rng = np.random.default_rng(9)
    pts = rng.dirichlet([1, 1, 1, 1], size=30)[:, 1:]
    for g in tet_grad(4, pts):
        assert np.abs(g.sum(axis=-1)).max() < 1e-12


def test_tet_grad_finite_differences():
    rng = np.random.default_rng(10)
    h = 1e-6
    pts = 0.8 * rng.dirichlet([1, 1, 1, 1], size=25)[:, 1:] + 0.02

    def vals_at(p):
        lam = np.column_stack([1 - p.sum(axis=1), p])
        return tet_eval(3, lam)

    grads = tet_grad(3, pts)
    for axis in range(3):
        d = np.zeros(3)
        d[axis] = h
        fd = (vals_at(pts + d) - vals_at(pts - d)) / (2 * h)
        rel = np.abs(grads[axis] - fd) / np.maximum(1.0, np.abs(grads[axis]))
        assert rel.max() < 1e-6


def test_trace_map_counts():
    tmap = trace_map(2, "quad_base")
    assert len(tmap.pairs) == 9
    assert all(k == 0 for (_, _, k), _ in tmap.pairs)
    tmap = trace_map(2, "tri_a0")
    assert len(tmap.pairs) == 6
    assert all(i == 0 for (i, _, _), _ in tmap.pairs)
    with pytest.raises(DomainError):
        trace_map(2, "tri_c9")


@pytest.mark.parametrize("face", FACE_IDS)
@pytest.mark.parametrize("order", range(1, 7))
def test_trace_identities_and_vanishing(face, order):
    rng = np.random.default_rng(12)
    u, v = rng.uniform(size=(2, 50))
    a, b, c = face_to_cube(face, u, v)
    vals = pyramid_eval(order, a, b, c)
    if face == "quad_base":
        fvals = quad_eval(order, u, v)
        fidx = index_set(BasisDescriptor("quad", order))
    else:
        fvals = triangle_eval(order, face_triangle_barycentric(u, v))
        fidx = index_set(BasisDescriptor("triangle", order))
    pidx = index_set(BasisDescriptor("pyramid", order))
    tmap = trace_map(order, face)
    # the pairs enumerate the full face basis exactly once
    assert sorted(f for _, f in tmap.pairs) == sorted(fidx)
    paired = set()
    for p_i, f_i in tmap.pairs:
        p, f = pidx.index(p_i), fidx.index(f_i)
        paired.add(p)
        assert np.abs(vals[:, p] - fvals[:, f]).max() < 1e-12
    unpaired = [p for p in range(len(pidx)) if p not in paired]
    if unpaired:
        assert np.abs(vals[:, unpaired]).max() < 1e-13


@pytest.mark.parametrize("order", range(1, 7))
def test_linear_independence(order):
    rng = np.random.default_rng(42)
    pts = anchor_points(order, rng)
    vand = pyramid_eval(order, pts[:, 0], pts[:, 1], pts[:, 2])
    vand = vand / np.linalg.norm(vand, axis=1, keepdims=True)
    smin = np.linalg.svd(vand, compute_uv=False)[-1]
    assert smin > 1e-8


def test_bad_descriptor():
    with pytest.raises(DomainError):
        BasisDescriptor("hexahedron", 2)
    with pytest.raises(DomainError):
        BasisDescriptor("pyramid", -1)
