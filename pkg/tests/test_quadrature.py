import numpy as np
import pytest

from bbpyr.errors import DomainError
from bbpyr.quadrature import gauss_jacobi_20, gauss_legendre, pyramid_rule
from support import monomial_pyramid_integral


def test_gauss_legendre_midpoint():
    rule = gauss_legendre(1)
    np.testing.assert_allclose(rule.nodes, [0.5], atol=1e-15)
    np.testing.assert_allclose(rule.weights, [1.0], atol=1e-15)


def test_gauss_legendre_two_point():
    # standard 2-point rule at +-1/sqrt(3), mapped to [0,1]
    rule = gauss_legendre(2)
    np.testing.assert_allclose(rule.nodes, [0.5 - 0.5 / np.sqrt(3), 0.5 + 0.5 / np.sqrt(3)], atol=1e-15)
    np.testing.assert_allclose(rule.weights, [0.5, 0.5], atol=1e-15)


def test_gauss_legendre_monomial_exactness():
    rule = gauss_legendre(5)
    got = (rule.weights * rule.nodes**9).sum()
    assert got == pytest.approx(0.1, abs=1e-14)


def test_gauss_jacobi_one_point():
    # moments of (1-c)^2 on [0,1]: m0 = 1/3, m1 = 1/12, node = m1/m0
    rule = gauss_jacobi_20(1)
    np.testing.assert_allclose(rule.nodes, [0.25], atol=1e-15)
    np.testing.assert_allclose(rule.weights, [1.0 / 3.0], atol=1e-15)


@pytest.mark.parametrize("n", range(1, 9))
def test_gauss_jacobi_weight_sums(n):
    assert abs(gauss_jacobi_20(n).weights.sum() - 1.0 / 3.0) < 1e-14
    assert abs(gauss_legendre(n).weights.sum() - 1.0) < 1e-14


def test_gauss_jacobi_beta_oracle():
    # Beta(6,3) = 5! 2! / 8!
    rule = gauss_jacobi_20(3)
    got = (rule.weights * rule.nodes**5).sum()
    assert got == pytest.approx(1.0 / 168.0, abs=1e-14)


@pytest.mark.parametrize("n", range(1, 9))
def test_nodes_interior_and_weights_positive(n):
    for rule in (gauss_legendre(n), gauss_jacobi_20(n)):
        assert rule.weights.min() > 0.0
        assert rule.nodes.min() > 0.0 and rule.nodes.max() < 1.0
        assert np.all(np.diff(rule.nodes) > 0)


def test_pyramid_rule_basics():
    rule = pyramid_rule(1)
    assert rule.weights.sum() == pytest.approx(1.0 / 3.0, abs=1e-15)
    rule = pyramid_rule(2)
    assert len(rule) == 8
    got = (rule.weights * rule.nodes[:, 0] * rule.nodes[:, 1]).sum()
    assert got == pytest.approx(1.0 / 12.0, abs=1e-14)
    rule = pyramid_rule(3)
    got = (rule.weights * rule.nodes[:, 2] ** 2).sum()
    assert got == pytest.approx(1.0 / 30.0, abs=1e-14)


@pytest.mark.parametrize("n", range(1, 7))
def test_pyramid_rule_node_count_and_weight_sum(n):
    rule = pyramid_rule(n)
    assert len(rule) == n**3
    assert rule.nodes.shape == (n**3, 3)
    assert abs(rule.weights.sum() - 1.0 / 3.0) < 1e-14
    assert rule.nodes[:, 2].max() < 1.0


@pytest.mark.parametrize("n", range(1, 7))
def test_exactness_sweep(n):
    rule = pyramid_rule(n)
    a, b, c = rule.nodes.T
    deg = 2 * n - 1
    for p in range(deg + 1):
        for q in range(deg + 1):
            for r in range(deg + 1):
                got = (rule.weights * a**p * b**q * c**r).sum()
                assert got == pytest.approx(monomial_pyramid_integral(p, q, r), abs=1e-12)


def test_zero_points_rejected():
    for ctor in (gauss_legendre, gauss_jacobi_20, pyramid_rule):
        with pytest.raises(DomainError):
            ctor(0)
