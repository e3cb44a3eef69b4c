#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
度量层级测试：S 张量、g_k / ḡ_k、积分 J_i^k 的对合、守恒与反射不变性
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from billiards.confocal import ConfocalFamily
from billiards.dynamics import PhasePoint
from billiards.errors import SingularL, EnergyBelowPotential, BadParameter
from billiards.hierarchy import (
    HierarchyContext,
    EUCLIDEAN_BRANCH,
    HYPERBOLIC_BRANCH,
    char_tensors,
    closed_form_report,
    metric_at,
    EuclideanMetric,
    HierarchyMetric,
    maupertuis_scale,
    JIntegral,
    CoordinateFunction,
    integral_J,
    poisson_bracket,
    poisson_bracket_fd,
)
from billiards.hierarchy.report import hierarchy_report, default_boundary, random_interior_state
from billiards.hierarchy.tensors import direct_adjugate, inverse_power
from billiards.potentials import BasisSpec, catalog_potential

F = Fraction


def _as_sympy(value):
    return sympy.Rational(value.numerator, value.denominator)


@pytest.mark.parametrize("b, x", [
    ((F(2), F(1)), (F(1, 3), F(-1, 5))),
    ((F(3), F(2), F(1)), (F(1, 2), F(1, 4), F(-1, 3))),
    ((F(5), F(3), F(2), F(1)), (F(1, 7), F(2, 5), F(0), F(-1, 2))),
])
def test_s_tensors_reproduce_the_adjugate_exactly(b, x):
    ctx = HierarchyContext(ConfocalFamily(b))
    L, S = char_tensors(ctx, x)
    assert len(S) == len(b)
    # S_{d−1} = I
    assert all(S[-1][i, j] == (1 if i == j else 0) for i in range(len(b)) for j in range(len(b)))
    for alpha in (1, 2, F(1, 2)):
        expected = direct_adjugate(ctx, x, _as_sympy(F(alpha)))
        got = S.adjugate_at(F(alpha))
        for i in range(len(b)):
            for j in range(len(b)):
                assert _as_sympy(got[i, j]) == expected[i, j]


def test_closed_form_matches_after_correction():
    ctx = HierarchyContext(ConfocalFamily((3.0, 2.0, 1.0)))
    outcome = closed_form_report(ctx, (0.3, -0.4, 0.2))
    assert outcome['corrected_form_matches']
    assert not outcome['printed_form_well_typed']
    assert set(outcome['max_relative_error']) == {'1', '2', '3'}


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
@pytest.mark.parametrize("which", [EUCLIDEAN_BRANCH, HYPERBOLIC_BRANCH])
def test_metrics_are_positive_definite(k, which):
    family = ConfocalFamily((3.0, 2.0, 1.0))
    metric = HierarchyMetric(HierarchyContext(family, k), which)
    x = np.array([0.4, -0.3, 0.2])
    G = metric.matrix(x)
    np.testing.assert_allclose(G, G.T)
    assert np.all(np.linalg.eigvalsh(G) > 0)

    h = 1e-6
    deriv = metric.derivative(x)
    for m in range(3):
        e = np.zeros(3)
        e[m] = h
        fd = (metric.matrix(x + e) - metric.matrix(x - e)) / (2 * h)
        np.testing.assert_allclose(deriv[m], fd, rtol=1e-5, atol=1e-6)


def test_metric_tags():
    ctx = HierarchyContext(ConfocalFamily((2.0, 1.0)), 2)
    assert HierarchyMetric(ctx).tag == 'g_2'
    assert HierarchyMetric(ctx, HYPERBOLIC_BRANCH).tag == 'gbar_2'
    assert HierarchyMetric(HierarchyContext(ConfocalFamily((2.0, 1.0)), 0)).euclidean
    with pytest.raises(BadParameter):
        HierarchyMetric(ctx, 'spherical')


def test_singular_L():
    family = ConfocalFamily((1.0, 0.5))
    # x_1²/b_1 = 1：L 在此处奇异
    with pytest.raises(SingularL):
        metric_at(HierarchyContext(family, -1), (1.0, 0.0))
    with pytest.raises(SingularL):
        integral_J(HierarchyContext(family, 1), PhasePoint((1.0, 0.0), (0.1, 0.2)), 0)
    # 非负的 k 不需要求逆
    assert metric_at(HierarchyContext(family, 1), (1.0, 0.0)).shape == (2, 2)


def test_hamiltonian_is_the_last_integral():
    ctx = HierarchyContext(ConfocalFamily((3.0, 2.0, 1.0)), 1)
    state = PhasePoint((0.2, 0.1, -0.3), (0.5, -0.7, 0.4))
    G_inv = np.linalg.inv(metric_at(ctx, state.x))
    assert integral_J(ctx, state, 2) == pytest.approx(state.p @ G_inv @ state.p)


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_analytic_brackets_match_finite_differences(k):
    boundary = default_boundary(3)
    ctx = HierarchyContext(boundary.family, k)
    rng = np.random.default_rng(k + 10)
    J = [JIntegral(ctx, i) for i in range(3)]
    for _ in range(5):
        state = random_interior_state(boundary, rng)
        for F_, G_ in ((J[0], J[1]), (J[1], J[2]), (J[0], CoordinateFunction('x', 1))):
            analytic = poisson_bracket(F_, G_, state)
            numeric = poisson_bracket_fd(F_, G_, state)
            assert analytic == pytest.approx(numeric, abs=1e-6)


def test_coordinate_bracket():
    state = PhasePoint((0.1, 0.2), (0.3, 0.4))
    assert poisson_bracket(CoordinateFunction('x', 0), CoordinateFunction('p', 0), state) == 1.0
    assert poisson_bracket(CoordinateFunction('x', 0), CoordinateFunction('p', 1), state) == 0.0


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_hierarchy_report(d, k):
    report = hierarchy_report(d, k, seed=4, samples=25, flow_samples=1)
    assert report['seed'] == 4
    assert report['involution'] < 1e-8
    assert report['reflection'] < 1e-10
    assert report['conservation'] < 1e-6
    assert report['independence'] > 1e-8


def test_maupertuis_scale_needs_energy_above_potential():
    V = catalog_potential(BasisSpec('V', 1), ConfocalFamily((F(2), F(1))))
    scaled = maupertuis_scale(EuclideanMetric(2), V, 1.0)
    # V_1 = |x|²
    np.testing.assert_allclose(scaled.matrix((0.5, 0.5)), 0.5 * np.eye(2))
    with pytest.raises(EnergyBelowPotential):
        maupertuis_scale(EuclideanMetric(2), V, 0.25).matrix((0.5, 0.5))


def test_negative_powers_by_solving():
    ctx = HierarchyContext(ConfocalFamily((3.0, 2.0, 1.0)), -2)
    x = np.array([0.4, -0.3, 0.2])
    L = ctx.L(x)
    np.testing.assert_array_equal(inverse_power(L, 0), np.eye(3))
    for q in (1, 2, 3):
        np.testing.assert_allclose(inverse_power(L, q) @ np.linalg.matrix_power(L, q), np.eye(3), atol=1e-12)
    # g_{−2}(ξ, η) = ⟨L^{−2}ξ, η⟩
    np.testing.assert_allclose(metric_at(ctx, x), inverse_power(L, 2), rtol=1e-12)
