#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
可分离势测试：Laurent 运算、可分离性残差与递推、基元素、椭圆坐标形式、伴随函数
"""

from fractions import Fraction
from math import comb

import numpy as np
import pytest
import sympy

from billiards.confocal import ConfocalFamily, from_elliptic
from billiards.errors import BadParameter, CoincidentLambdas, NotSeparable
from billiards.hierarchy import HierarchyContext
from billiards.potentials import (
    LaurentPolynomial,
    sum_of_squares,
    separability_residual,
    is_separable,
    recurrence_check,
    BasisSpec,
    basis_potential,
    catalog_potential,
    generating_potential,
    elliptic_form,
    elliptic_form_eval,
    calibrate_coefficients,
    divided_difference,
    solve_f,
)

F = Fraction

PLANE = ConfocalFamily((F(2), F(1)))
SPACE = ConfocalFamily((F(3), F(2), F(1)))

CATALOG = ['V1', 'V2', 'V3', 'W1_1', 'W2_1', 'W3_1', 'W2_2', 'W3_2']

# 满足 b_1 > λ_1 > b_2 > λ_2 > b_3 > λ_3 的椭圆坐标
SPACE_POINTS = [(2.5, 1.5, 0.5), (2.9, 1.1, 0.2), (2.2, 1.8, -0.7), (2.6, 1.3, 0.9), (2.05, 1.95, -2.0)]


def test_laurent_arithmetic():
    x1 = LaurentPolynomial.variable(0, 2)
    inv = LaurentPolynomial.variable(1, 2, -1)
    square = (x1 + inv) ** 2
    assert square.coefficient((2, 0)) == 1
    assert square.coefficient((1, -1)) == 2
    assert square.coefficient((0, -2)) == 1
    assert square.exponent_bounds() == (-2, 2)
    assert not square.is_polynomial()
    assert (square - square).is_zero()
    assert LaurentPolynomial.constant(3, 2) == 3
    assert (x1 * F(1, 2)).coefficient((1, 0)) == F(1, 2)
    assert square.diff(1).coefficient((1, -2)) == -2
    with pytest.raises(ValueError):
        inv.integrate(1)
    with pytest.raises(BadParameter):
        x1 + LaurentPolynomial.variable(0, 3)


def test_laurent_text_and_sympy():
    V = LaurentPolynomial({(2, -2): F(3, 4), (0, 0): -1, (-4, 0): 2})
    assert V.to_lines() == ['-4 0 : 2', '0 0 : -1', '2 -2 : 3/4']
    assert LaurentPolynomial.load(V.dump()) == V
    x1, x2 = V.symbols()
    assert V.to_sympy() == sympy.Rational(3, 4) * x1 ** 2 / x2 ** 2 - 1 + 2 / x1 ** 4
    assert LaurentPolynomial.from_sympy(V.to_sympy(), (x1, x2)) == V
    with pytest.raises(BadParameter):
        LaurentPolynomial.from_sympy(sympy.sqrt(x1), (x1, x2))
    with pytest.raises(BadParameter):
        LaurentPolynomial.load('1 2 3/4\n')


def test_laurent_values():
    V = LaurentPolynomial({(2, -2): F(3, 4), (0, 1): 1})
    assert V.evaluate_exact((F(1), F(2))) == F(3, 16) + 2
    assert V.value((1.0, 2.0)) == pytest.approx(3 / 16 + 2)
    np.testing.assert_allclose(V.gradient((1.0, 2.0)), [3 / 8, 1 - 3 / 16])


def test_residual_of_a_linear_potential():
    x1 = LaurentPolynomial.variable(0, 2)
    residual = separability_residual(x1, PLANE)
    assert residual[(0, 1)] == 3 * LaurentPolynomial.variable(1, 2)
    assert not is_separable(x1, PLANE)
    ok, violation = recurrence_check(x1, PLANE)
    assert not ok
    assert violation.lhs != violation.rhs
    assert violation.to_dict()['pair'] == [1, 2]


@pytest.mark.parametrize("label", CATALOG)
@pytest.mark.parametrize("family", [PLANE, SPACE])
def test_catalog_is_separable(label, family):
    V = catalog_potential(BasisSpec.parse(label), family)
    assert is_separable(V, family)
    assert recurrence_check(V, family) == (True, None)


@pytest.mark.parametrize("label", CATALOG)
@pytest.mark.parametrize("family", [PLANE, SPACE])
def test_generated_basis_matches_catalog(label, family):
    spec = BasisSpec.parse(label)
    assert basis_potential(spec, family) == catalog_potential(spec, family)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_generated_basis_matches_generating_function(k):
    for family in (PLANE, SPACE):
        assert basis_potential(BasisSpec('V', k), family) == generating_potential(k, family)


@pytest.mark.parametrize("label", ['V4', 'V5', 'W4_1', 'W4_3'])
def test_higher_basis_elements_are_separable(label):
    spec = BasisSpec.parse(label)
    V = basis_potential(spec, SPACE)
    assert is_separable(V, SPACE)
    if spec.kind == 'V':
        # 限制到 x_1 轴上是 x_1² (b_1 − x_1²)^{k−1}
        b1 = F(SPACE.b[0])
        expected = {2 + 2 * m: comb(spec.k - 1, m) * b1 ** (spec.k - 1 - m) * (-1) ** m for m in range(spec.k)}
        assert V.axis_part(0) == expected
    else:
        assert V.axis_part(spec.axis) == {-2 * spec.k: 1}


def test_recurrence_agrees_with_residual():
    rng = np.random.default_rng(8)
    for _ in range(40):
        terms = {}
        for _ in range(int(rng.integers(1, 5))):
            exps = tuple(int(e) for e in rng.integers(-4, 5, size=3))
            terms[exps] = int(rng.integers(-3, 4)) or 1
        V = LaurentPolynomial(terms, 3)
        if rng.uniform() < 0.3:
            V = catalog_potential(BasisSpec('V', 2), SPACE) * 2 - catalog_potential(BasisSpec('W', 2, 3), SPACE)
        assert recurrence_check(V, SPACE)[0] == is_separable(V, SPACE)


def test_basis_spec_parsing():
    assert BasisSpec.parse('W2_1') == BasisSpec('W', 2, 1)
    assert BasisSpec.parse('v3').label == 'V3'
    with pytest.raises(BadParameter):
        BasisSpec.parse('X2')
    with pytest.raises(BadParameter):
        BasisSpec('W', 2)
    with pytest.raises(BadParameter):
        catalog_potential(BasisSpec('W', 1, 3), PLANE)
    with pytest.raises(BadParameter):
        catalog_potential(BasisSpec('V', 4), PLANE)


def test_linear_elliptic_form():
    # V_1 = |x|² = b_1 + b_2 − λ_1 − λ_2
    form = elliptic_form(BasisSpec('V', 1), PLANE)
    assert form.poly == {2: -1, 1: 3}
    assert form.value((1.5, 0.5)) == pytest.approx(1.0)


@pytest.mark.parametrize("label", ['V1', 'V2', 'V3', 'W1_1', 'W2_2', 'W3_3'])
def test_elliptic_form_matches_cartesian_value(label):
    spec = BasisSpec.parse(label)
    V = basis_potential(spec, SPACE)
    form = elliptic_form(spec, SPACE)
    for lam in SPACE_POINTS:
        x = from_elliptic(SPACE, lam)
        expected = V.value(x)
        assert elliptic_form_eval(spec, SPACE, lam) == pytest.approx(expected, rel=1e-9, abs=1e-9)
        assert divided_difference(form.v, lam) == pytest.approx(expected, rel=1e-8, abs=1e-8)


def test_coincident_lambdas():
    spec = BasisSpec('V', 2)
    with pytest.raises(CoincidentLambdas):
        elliptic_form_eval(spec, PLANE, (1.5, 1.5))
    with pytest.raises(CoincidentLambdas):
        divided_difference(elliptic_form(spec, PLANE).v, (1.5, 1.5))
    limit = elliptic_form_eval(spec, PLANE, (1.5, 1.5), confluent=True)
    assert limit == pytest.approx(elliptic_form_eval(spec, PLANE, (1.5, 1.5 + 1e-6)), abs=1e-5)


@pytest.mark.parametrize("label", ['V2', 'V3', 'W2_1'])
def test_calibration_recovers_exact_coefficients(label):
    spec = BasisSpec.parse(label)
    fitted, residual = calibrate_coefficients(spec, SPACE, SPACE_POINTS)
    assert residual < 1e-9
    exact = elliptic_form(spec, SPACE)
    if spec.kind == 'V':
        for m, c in fitted.poly.items():
            assert c == pytest.approx(float(exact.poly.get(m, 0)), abs=1e-7)
    else:
        for j, c in fitted.poles.items():
            assert c == pytest.approx(float(exact.poles.get(j, 0)), abs=1e-7)


def test_companion_of_inverse_square():
    ctx = HierarchyContext(PLANE)
    f = solve_f(ctx, catalog_potential(BasisSpec('W', 1, 1), PLANE), 0)
    # f_0 = (b_2 − x_2²)/x_1²
    assert f.symbolic == LaurentPolynomial({(-2, 0): F(1), (-2, 2): F(-1)})
    np.testing.assert_allclose(f.gradient((0.4, 0.3)), f.field((0.4, 0.3)))


def test_last_companion_is_the_potential():
    V = catalog_potential(BasisSpec('V', 2), SPACE)
    f = solve_f(HierarchyContext(SPACE), V, SPACE.d - 1)
    assert f.symbolic == V


def test_numeric_companion_matches_symbolic():
    V = catalog_potential(BasisSpec('V', 2), PLANE)
    symbolic = solve_f(HierarchyContext(PLANE), V, 0)
    numeric = solve_f(HierarchyContext(ConfocalFamily((2.0, 1.0))), V, 0)
    assert numeric.symbolic is None
    for x in [(0.2, 0.1), (-0.3, 0.25), (0.1, -0.4)]:
        assert numeric.value(x) == pytest.approx(symbolic.value(x), abs=1e-12)


def test_linear_potential_has_no_companion():
    with pytest.raises(NotSeparable):
        solve_f(HierarchyContext(PLANE), LaurentPolynomial.variable(0, 2), 0)
    with pytest.raises(BadParameter):
        solve_f(HierarchyContext(PLANE), sum_of_squares(2), 2)
