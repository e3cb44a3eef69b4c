# -*- coding: utf-8 -*-
"""
Cayley 型周期判据：平方根级数、判据矩阵、精确秩与周期焦散搜索
"""

from billiards.cayley.series import RationalSeries, sqrt_series, poly_from_roots
from billiards.cayley.linalg import rank_exact, determinant_exact, nullspace_exact, rank_float
from billiards.cayley.hankel import hankel_matrix
from billiards.cayley.criterion import (
    SpectralCurveSpec,
    PeriodicityVerdict,
    classify_degeneracy,
    cayley_condition,
)
from billiards.cayley.indicator import period_indicator, find_periodic_caustic
