#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
共焦几何测试：共焦族、椭圆坐标、直线焦散、Klein 映射与双曲度量
"""

from fractions import Fraction

import numpy as np
import pytest

from billiards.confocal import (
    ConfocalFamily,
    BoundaryQuadric,
    MinkowskiEllipsoid,
    to_elliptic,
    from_elliptic,
    squares_from_elliptic,
    line_caustics,
    caustic_polynomial,
    random_tangent_launch,
    generatrix_directions,
    tangent_direction,
    minkowski_to_klein,
    minkowski_point_to_klein,
    verify_confocality_symbolic,
    hyperbolic_metric_at,
    hyperbolic_metric_derivative,
    geometry_document,
    read_geometry_document,
)
from billiards.confocal.metric import metric_identity_residual
from billiards.errors import (
    NonStrictFamily,
    DegenerateChart,
    InterlacingViolated,
    DegenerateLine,
    OrderingViolated,
    OutsideModel,
    BadParameter,
)

F = Fraction


def test_family_validation():
    with pytest.raises(NonStrictFamily):
        ConfocalFamily((1, 2))
    with pytest.raises(NonStrictFamily):
        ConfocalFamily((2, 2))
    with pytest.raises(NonStrictFamily):
        ConfocalFamily((3,))
    with pytest.raises(NonStrictFamily):
        ConfocalFamily((2, -1))
    family = ConfocalFamily((2, 2), symmetric=True)
    assert not family.strict
    with pytest.raises(NonStrictFamily):
        to_elliptic(family, (0.1, 0.2))


def test_boundary_requires_c_below_b_d():
    family = ConfocalFamily((3, 2, 1))
    with pytest.raises(BadParameter):
        BoundaryQuadric(family, 1)
    with pytest.raises(BadParameter):
        BoundaryQuadric(family, 0)
    boundary = BoundaryQuadric(family, F(1, 2))
    np.testing.assert_allclose(boundary.axes_squared(), [2.5, 1.5, 0.5])


@pytest.mark.parametrize("b, x", [
    ((F(3), F(2), F(1)), (0.5, 0.4, 0.3)),
    ((F(4), F(2)), (1.2, -0.7)),
    ((5.0, 3.5, 2.0, 0.5), (0.3, -0.2, 0.6, 0.1)),
])
def test_elliptic_coordinates_interlace_and_invert(b, x):
    family = ConfocalFamily(b)
    coords = to_elliptic(family, x)
    lam = coords.as_array()
    bf = family.b_array()
    # b_1 > λ_1 > b_2 > ... > b_d > λ_d
    for i in range(family.d):
        assert lam[i] < bf[i]
        if i + 1 < family.d:
            assert lam[i] > bf[i + 1]
        assert family.gamma(x, lam[i]) == pytest.approx(1.0, abs=1e-10)
    signs = np.sign(x)
    np.testing.assert_allclose(from_elliptic(family, coords, signs=signs), x, atol=1e-10)


def test_product_formula_is_exact():
    family = ConfocalFamily((F(4), F(2)))
    squares = squares_from_elliptic(family, (F(3), F(1)))
    assert squares == [F(3, 2), F(1, 2)]
    x = [F(3, 2), F(1, 2)]
    # γ(λ) = Σ x_i²/(b_i − λ) 在两个 λ 上都等于 1
    for lam in (F(3), F(1)):
        assert sum(s / (b - lam) for s, b in zip(x, family.b)) == 1


def test_chart_rejects_symmetry_planes():
    family = ConfocalFamily((2, 1))
    with pytest.raises(DegenerateChart):
        to_elliptic(family, (2 ** 0.5, 0.0))
    coords = to_elliptic(family, (2 ** 0.5, 0.0), allow_degenerate=True)
    assert coords.degenerate


def test_from_elliptic_checks_interlacing():
    family = ConfocalFamily((4, 2))
    with pytest.raises(InterlacingViolated):
        from_elliptic(family, (1, 3))


def test_horizontal_line_caustic_is_exact():
    # y = h 与 x²/(b_1 − μ) + y²/(b_2 − μ) = 1 相切 ⇔ b_2 − μ = h²
    family = ConfocalFamily((F(4), F(2)))
    caustics = line_caustics(family, (F(0), F(1, 2)), (F(1), F(0)))
    assert caustics.params == (F(7, 4),)
    assert not caustics.degenerate
    assert caustic_polynomial(family, (F(0), F(1, 2)), (F(1), F(0))) == [F(1), F(-7, 4)]


def test_axis_line_is_flagged_degenerate():
    family = ConfocalFamily((5, 2))
    caustics = line_caustics(family, (2.0, 0.0), (-1.0, 0.0))
    assert caustics.params[0] == pytest.approx(2.0)
    assert caustics.degenerate
    with pytest.raises(DegenerateLine):
        line_caustics(family, (2.0, 0.0), (-1.0, 0.0), strict=True)
    with pytest.raises(DegenerateLine):
        line_caustics(family, (0.1, 0.2), (0.0, 0.0))


def test_caustics_are_tangent_to_the_line():
    family = ConfocalFamily((3.0, 2.0, 1.0))
    x0 = np.array([0.2, -0.1, 0.3])
    v = np.array([0.7, 0.4, -0.5])
    caustics = line_caustics(family, x0, v)
    assert len(caustics.params) == 2
    b = family.b_array()
    for mu in caustics.params:
        A = b - mu
        # 直线与 Q_μ 的交点方程 α s² + 2β s + γ = 0 的判别式为 0
        alpha = np.sum(v * v / A)
        beta = np.sum(x0 * v / A)
        gamma = np.sum(x0 * x0 / A) - 1.0
        assert abs(beta * beta - alpha * gamma) < 1e-9 * max(1.0, beta * beta)


def test_tangent_launch_reproduces_caustic():
    boundary = BoundaryQuadric(ConfocalFamily((4.0, 2.0)), 1.0)
    rng = np.random.default_rng(7)
    for _ in range(5):
        x0, v0 = random_tangent_launch(boundary, (1.5,), rng)
        assert boundary.value(x0) == pytest.approx(1.0, abs=1e-12)
        assert line_caustics(boundary.family, x0, v0).params[0] == pytest.approx(1.5, abs=1e-9)


def test_tangent_direction_outside_reach():
    boundary = BoundaryQuadric(ConfocalFamily((4.0, 2.0)), 1.0)
    # 靠近中心的点不可能与很靠外的椭圆焦散相切
    with pytest.raises(OutsideModel):
        tangent_direction(boundary, (0.1, 0.1), (1.9,))


def test_klein_image_is_confocal():
    E = MinkowskiEllipsoid((4, 2, 1), (F(1, 2),))
    image = minkowski_to_klein(E, c=1)
    assert image.family.b == (F(2), F(4, 3))
    assert image.c == 1
    assert image.caustic_map(F(1, 2)) == F(8, 7)
    family, boundary, caustic_map = image
    assert boundary is image.boundary
    assert caustic_map(0) == 1
    assert verify_confocality_symbolic(E)


def test_klein_image_of_boundary_point():
    E = MinkowskiEllipsoid((4, 2, 1))
    image = minkowski_to_klein(E, c=1)
    a = np.array([4.0, 2.0, 1.0])
    for theta in np.linspace(0.1, 1.4, 5):
        # −ξ_0²/a_0 + Σ ξ_i²/a_i = 0，取 ξ_0 = 1
        y = np.sqrt(a[1:] / a[0]) * np.array([np.cos(theta), np.sin(theta)])
        scale = 1.0 / np.sqrt(1.0 - y @ y)
        xi = scale * np.concatenate([[1.0], y])
        x = minkowski_point_to_klein(image, xi)
        assert image.boundary.value(x) == pytest.approx(1.0, abs=1e-12)


def test_minkowski_ordering():
    with pytest.raises(OrderingViolated):
        MinkowskiEllipsoid((1, 2, 3))
    with pytest.raises(OrderingViolated):
        MinkowskiEllipsoid((4, 1, 2))
    with pytest.raises(BadParameter):
        MinkowskiEllipsoid((4, 2, 1), (F(1, 2), F(1, 3)))


def test_geometry_document_round_trip_keeps_rationals():
    E = MinkowskiEllipsoid((4, 2, 1), (F(1, 3),))
    image = minkowski_to_klein(E, c=F(1, 2))
    text = geometry_document(boundary=image.boundary, ellipsoid=E)
    assert '"2/3"' in text
    loaded = read_geometry_document(text)
    assert loaded['boundary'].family.b == image.family.b
    assert loaded['boundary'].c == F(1, 2)
    assert loaded['ellipsoid'].mu == (F(1, 3),)


@pytest.mark.parametrize("b, x", [
    ((2.0, 1.0), (0.3, 0.4)),
    ((3.0, 2.0, 1.0), (0.5, -0.2, 0.4)),
])
def test_hyperbolic_metric(b, x):
    family = ConfocalFamily(b)
    pi = hyperbolic_metric_at(family, x)
    np.testing.assert_allclose(pi, pi.T)
    assert np.all(np.linalg.eigvalsh(pi) > 0)
    assert metric_identity_residual(family, x) < 1e-10

    # 解析导数与中心差分
    h = 1e-6
    deriv = hyperbolic_metric_derivative(family, x)
    for m in range(len(x)):
        e = np.zeros(len(x))
        e[m] = h
        fd = (hyperbolic_metric_at(family, np.add(x, e)) - hyperbolic_metric_at(family, np.subtract(x, e))) / (2 * h)
        np.testing.assert_allclose(deriv[m], fd, rtol=1e-6, atol=1e-6)


def test_hyperbolic_metric_outside_model():
    with pytest.raises(OutsideModel):
        hyperbolic_metric_at(ConfocalFamily((2.0, 1.0)), (1.5, 0.0))


def test_generatrix_directions_stay_on_the_hyperboloid():
    family = ConfocalFamily((3.0, 2.0, 1.0))
    boundary = BoundaryQuadric(family, 0.5)
    # Γ 与单叶双曲面 Q_{3/2} 的交点
    x0 = from_elliptic(family, (2.5, 1.5, 0.5))
    first, second = generatrix_directions(boundary, x0, 1.5)
    assert np.linalg.norm(np.cross(first, second)) > 1e-3
    for v in (first, second):
        assert np.linalg.norm(v) == pytest.approx(1.0)
        for s in (-0.4, 0.3):
            assert family.gamma(x0 + s * v, 1.5) == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(line_caustics(family, x0, v).params, [1.5, 1.5], atol=1e-6)


def test_elliptic_coordinates_of_a_plane_point():
    # λ² − (7/4)λ + 1/2 = 0
    coords = to_elliptic(ConfocalFamily((2, 1)), (1.0, 0.5))
    np.testing.assert_allclose(coords.as_array(), [1.3904, 0.3596], atol=1e-4)
    root = (7 / 4 + np.sqrt(49 / 16 - 2)) / 2
    assert coords.as_array()[0] == pytest.approx(root, abs=1e-12)
    np.testing.assert_allclose(from_elliptic(ConfocalFamily((2, 1)), coords), [1.0, 0.5], atol=1e-12)


@pytest.mark.parametrize("b", [(2, 1), (3, 2, 1)])
def test_random_elliptic_round_trips(b):
    family = ConfocalFamily(b)
    bf = family.b_array()
    rng = np.random.default_rng(len(b))
    margin = 0.05
    for _ in range(100):
        lower = np.append(bf[1:], bf[-1] - 2.0)
        lam = rng.uniform(lower + margin, bf - margin)
        x = from_elliptic(family, lam)
        np.testing.assert_allclose(to_elliptic(family, x).as_array(), lam, atol=1e-11)


def test_caustics_ignore_line_parametrization():
    plane = ConfocalFamily((F(4), F(2)))
    x0, v = (F(1, 3), F(-1, 2)), (F(2), F(1, 5))
    expected = line_caustics(plane, x0, v).params
    space = ConfocalFamily((F(3), F(2), F(1)))
    y0, w = (F(1, 4), F(1, 5), F(-1, 3)), (F(1), F(2, 3), F(-1, 2))
    polynomial = caustic_polynomial(space, y0, w)
    for s, sigma in ((F(1, 2), F(3)), (F(-2), F(-1, 7)), (F(5, 3), F(1))):
        moved = tuple(p + s * q for p, q in zip(x0, v))
        assert line_caustics(plane, moved, tuple(sigma * q for q in v)).params == expected
        moved = tuple(p + s * q for p, q in zip(y0, w))
        assert caustic_polynomial(space, moved, tuple(sigma * q for q in w)) == polynomial


def test_klein_image_scales_with_c():
    E = MinkowskiEllipsoid((4, 2, 1), (F(1, 2),))
    base = minkowski_to_klein(E, c=1)
    for c in (F(1, 2), F(2)):
        image = minkowski_to_klein(E, c=c)
        assert image.family.b == tuple(c * v for v in base.family.b)
        assert image.c == c
        assert image.caustic_map(F(1, 2)) == c * base.caustic_map(F(1, 2))
        # 点按 √c 缩放时椭圆坐标按 c 缩放
        x = np.array([0.3, 0.2])
        lam = to_elliptic(base.family, x).as_array()
        scaled = to_elliptic(image.family, np.sqrt(float(c)) * x).as_array()
        np.testing.assert_allclose(scaled, float(c) * lam, rtol=1e-10)


@pytest.mark.parametrize("b", [(2.0, 1.0), (3.0, 2.0, 1.0), (4.0, 3.0, 2.0, 1.0)])
def test_metric_identity_at_random_points(b):
    family = ConfocalFamily(b)
    rng = np.random.default_rng(17)
    for _ in range(100):
        y = rng.normal(size=len(b))
        y *= rng.uniform(0.0, 0.9) / np.linalg.norm(y)
        assert metric_identity_residual(family, np.sqrt(family.b_array()) * y) < 1e-9
