#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cayley 判据测试：平方根级数、精确线性代数、判据矩阵、奇异情形与周期焦散搜索
"""

from fractions import Fraction

import numpy as np
import pytest

from billiards.cayley import (
    RationalSeries,
    sqrt_series,
    poly_from_roots,
    rank_exact,
    rank_float,
    determinant_exact,
    nullspace_exact,
    hankel_matrix,
    SpectralCurveSpec,
    classify_degeneracy,
    cayley_condition,
    period_indicator,
    find_periodic_caustic,
)
from billiards.cayley.criterion import series_for
from billiards.config import CLOSURE_EPS
from billiards.confocal import MinkowskiEllipsoid
from billiards.dynamics import caustic_closure_residual
from billiards.errors import (
    ZeroAtOrigin,
    InsufficientOrder,
    HigherMultiplicity,
    ZeroParameter,
    BadParameter,
    NoRootInBracket,
)

F = Fraction


def test_sqrt_of_one_plus_x():
    series = sqrt_series([1, 1], 4)
    assert series.coeffs == (F(1), F(1, 2), F(-1, 8), F(1, 16), F(-5, 128))
    assert series.b0_squared == 1


def test_sqrt_of_perfect_square_terminates():
    # (2 + x)² / 4 = (1 + x/2)²
    series = sqrt_series([4, 4, 1], 6)
    assert series.coeffs == (F(1), F(1, 2)) + (F(0),) * 5
    assert series.b0_squared == 4


def test_sqrt_series_errors():
    with pytest.raises(ZeroAtOrigin):
        sqrt_series([0, 1, 1], 3)
    with pytest.raises(BadParameter):
        sqrt_series([3], 3)


def test_series_text_round_trip():
    series = sqrt_series(poly_from_roots([4, 2, 1, F(1, 2)]), 9)
    again = RationalSeries.load(series.dump(), series.b0_squared)
    assert again == series


def test_sqrt_squares_back_on_random_quartics():
    rng = np.random.default_rng(3)
    for _ in range(20):
        roots = [F(int(rng.integers(1, 9)), int(rng.integers(1, 5))) for _ in range(4)]
        P = poly_from_roots(roots)
        series = sqrt_series(P, 20)
        square = [sum(series[j] * series[k - j] for j in range(k + 1)) for k in range(21)]
        target = [c / P[0] for c in P] + [F(0)] * (21 - len(P))
        assert square == target


def test_poly_from_roots():
    assert poly_from_roots([1, 2]) == [F(2), F(-3), F(1)]


def test_exact_linear_algebra():
    assert rank_exact([[1, 2], [2, 4]]) == 1
    assert rank_exact([[0, 0], [0, 0]]) == 0
    assert determinant_exact([[2, 1], [1, 3]]) == 5
    assert determinant_exact([[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]]) == F(1, 60)
    assert determinant_exact([[1, 2], [2, 4]]) == 0
    assert determinant_exact([[0, 1], [1, 0]]) == -1

    M = [[1, 1, 0], [0, 0, 1]]
    basis = nullspace_exact(M)
    assert len(basis) == 1
    for vec in basis:
        assert all(sum(a * b for a, b in zip(row, vec)) == 0 for row in M)
    assert len(nullspace_exact([], 3)) == 3


def test_rank_exact_agrees_with_singular_values():
    rng = np.random.default_rng(11)
    for _ in range(50):
        r = int(rng.integers(1, 4))
        A = rng.integers(-4, 5, size=(5, r)) @ rng.integers(-4, 5, size=(r, 4))
        rows = [[int(v) for v in row] for row in A]
        assert rank_exact(rows) == rank_float(rows) == np.linalg.matrix_rank(A)


def test_hankel_layout_for_small_periods():
    series = sqrt_series(poly_from_roots([4, 2, 1, F(1, 2)]), 5)
    T = series.coeffs
    # d = 2, n = 2：1×1 矩阵 (T_3)
    assert hankel_matrix(series, 2, 2) == [[T[3]]]
    # d = 2, n = 3：行列式 T_4² − T_3 T_5
    M = hankel_matrix(series, 3, 2)
    assert M == [[T[4], T[3]], [T[5], T[4]]]
    assert determinant_exact(M) == T[4] ** 2 - T[3] * T[5]
    with pytest.raises(BadParameter):
        hankel_matrix(series, 1, 2)
    with pytest.raises(InsufficientOrder):
        hankel_matrix(series, 4, 2)


def test_period_below_dimension_is_never_periodic():
    rng = np.random.default_rng(5)
    for d in (3, 4):
        for _ in range(10):
            values = sorted({F(int(v), 7) for v in rng.choice(np.arange(1, 60), size=2 * d, replace=False)},
                            reverse=True)
            a, mu = tuple(values[:d + 1]), tuple(values[d + 1:2 * d])
            E = MinkowskiEllipsoid(a, mu)
            for n in range(1, d):
                verdict = cayley_condition(E, n)
                assert not verdict.periodic
                assert verdict.reason == 'n<d'


def test_cayley_rejects_bad_input():
    E = MinkowskiEllipsoid((4, 2, 1), (F(1, 2),))
    with pytest.raises(BadParameter):
        cayley_condition(E, 0)
    with pytest.raises(ZeroParameter):
        MinkowskiEllipsoid((4, 2, 1), (0,))
    with pytest.raises(HigherMultiplicity):
        cayley_condition(MinkowskiEllipsoid((4, 2, 2), (2,)), 3)


def test_hyperplane_caustic_is_reported_not_judged():
    verdict = cayley_condition(MinkowskiEllipsoid((4, 2, 1), (2,)), 3)
    assert verdict.degeneracy == 'case_i'
    assert not verdict.periodic
    assert 'd-1' in verdict.reason


@pytest.mark.parametrize("a, mu, expected", [
    ((5, 3, 2, 1), (F(1, 2), F(1, 2)), 'case_iii'),
    ((5, 3, 3, 1), (2, F(1, 2)), 'case_ii'),
    ((7, 5, 2, 1), (F(3, 2), F(3, 2)), 'case_iii'),
    ((5, 4, 3, 2), (1, F(1, 3)), 'none'),
])
def test_singular_routes_agree(a, mu, expected):
    E = MinkowskiEllipsoid(a, mu)
    assert classify_degeneracy(E) == expected
    curve = SpectralCurveSpec.from_ellipsoid(E)
    if expected != 'none':
        assert curve.double_points()
        assert series_for(curve, 9, 'full').coeffs == series_for(curve, 9, 'normalized').coeffs
    for n in (3, 4, 5):
        full = cayley_condition(E, n, route='full')
        if expected != 'none':
            normalized = cayley_condition(E, n, route='normalized')
            assert (full.periodic, full.rank) == (normalized.periodic, normalized.rank)
        assert full.threshold == n - E.d + 1
        assert full.periodic == (full.rank < full.threshold)


def test_verdict_document():
    verdict = cayley_condition(MinkowskiEllipsoid((4, 2, 1), (F(1, 2),)), 3)
    doc = verdict.to_dict()
    assert doc['n'] == 3 and doc['d'] == 2
    assert doc['threshold'] == 2
    assert doc['route'] == 'full'


@pytest.mark.parametrize("n", [3, 4, 5])
def test_indicator_roots_close_by_simulation(n):
    a = (4, 2, 1)
    roots = find_periodic_caustic(a, n, (0, 1), verify=True, seed=1)
    assert roots
    for mu in roots:
        E = MinkowskiEllipsoid(a, (mu,))
        assert period_indicator(E, n) < 1e-10
        # n 周期也是 2n 周期
        assert period_indicator(E, 2 * n) < 1e-8
        assert caustic_closure_residual(E, n, seed=1) < CLOSURE_EPS
        # 不同的发射点给出同一周期
        for seed in (2, 3, 4):
            assert caustic_closure_residual(E, n, seed=seed) < CLOSURE_EPS
        shifted = mu - 1e-3 if mu > 0.5 else mu + 1e-3
        assert caustic_closure_residual(E.with_mu((shifted,)), n, seed=1) > CLOSURE_EPS


def test_odd_period_has_no_hyperbola_caustic():
    with pytest.raises(NoRootInBracket):
        find_periodic_caustic((4, 2, 1), 3, (1, 2))


def test_empty_bracket():
    with pytest.raises(NoRootInBracket):
        find_periodic_caustic((4, 2, 1), 3, (1, 1))


def test_sqrt_of_two_real_roots():
    # √(1 − 5x/4 + x²/4)
    series = sqrt_series(poly_from_roots([1, 4]), 2)
    assert poly_from_roots([1, 4]) == [F(4), F(-5), F(1)]
    assert series.coeffs == (F(1), F(-5, 8), F(-9, 128))
    assert series.b0_squared == 4
    assert sqrt_series([1, -2, 1], 4).coeffs == (F(1), F(-1), F(0), F(0), F(0))


@pytest.mark.parametrize("a, mu", [
    ((4, 2, 1), (F(1, 2),)),
    ((4, 2, 1), (F(3, 2),)),
    ((5, 4, 3, 2), (1, F(1, 3))),
    ((5, 3, 2, 1), (F(1, 2), F(1, 2))),
])
def test_verdict_survives_common_scaling(a, mu):
    E = MinkowskiEllipsoid(a, mu)
    for n in (3, 4, 5):
        verdict = cayley_condition(E, n)
        for s in (F(2), F(1, 3), F(7, 5)):
            scaled = cayley_condition(E.scaled(s), n)
            assert (scaled.periodic, scaled.rank) == (verdict.periodic, verdict.rank)


def test_singular_routes_agree_on_random_instances():
    rng = np.random.default_rng(2)
    checked = 0
    while checked < 100:
        values = sorted({F(int(v), int(rng.integers(1, 6))) for v in rng.integers(1, 40, size=5)}, reverse=True)
        if len(values) < 5:
            continue
        a, mu = tuple(values[:4]), values[4]
        E = MinkowskiEllipsoid(a, (mu, mu))
        assert classify_degeneracy(E) == 'case_iii'
        for n in (3, 4):
            full = cayley_condition(E, n, route='full')
            normalized = cayley_condition(E, n, route='normalized')
            assert (full.periodic, full.rank) == (normalized.periodic, normalized.rank)
        checked += 1


def test_verdict_carries_the_indicator():
    E = MinkowskiEllipsoid((4, 2, 1), (F(1, 2),))
    for n in (3, 4, 5):
        verdict = cayley_condition(E, n)
        assert not verdict.periodic
        assert verdict.indicator > 0
        assert verdict.indicator == pytest.approx(period_indicator(E, n), rel=1e-12)
        assert verdict.to_dict()['indicator'] == verdict.indicator
    # 二重点使矩阵秩亏时指示量为 0
    for n in (3, 4, 5):
        verdict = cayley_condition(MinkowskiEllipsoid((5, 3, 2, 1), (F(1, 2), F(1, 2))), n)
        assert (verdict.indicator == 0.0) == verdict.periodic
        assert verdict.indicator >= 0
    assert cayley_condition(E, 1).indicator is None


def test_roots_failing_closure_are_dropped(monkeypatch):
    a = (4, 2, 1)
    roots = find_periodic_caustic(a, 3, (0, 1), verify=False)
    assert roots
    monkeypatch.setattr('billiards.cayley.indicator.caustic_closure_residual', lambda *args, **kwargs: 1.0)
    assert find_periodic_caustic(a, 3, (0, 1), verify=False) == roots
    with pytest.raises(NoRootInBracket):
        find_periodic_caustic(a, 3, (0, 1))
