# -*- coding: utf-8 -*-
"""
可分离势：Laurent 多项式、可分离性判定、基元素、椭圆坐标形式与伴随函数 f_i
"""

from billiards.potentials.laurent import LaurentPolynomial, sum_of_squares
from billiards.potentials.separability import (
    separability_residual,
    is_separable,
    recurrence_check,
    RecurrenceViolation,
)
from billiards.potentials.basis import (
    BasisSpec,
    basis_potential,
    catalog_potential,
    generating_potential,
)
from billiards.potentials.elliptic_form import (
    EllipticForm,
    elliptic_form,
    elliptic_form_eval,
    calibrate_coefficients,
    divided_difference,
)
from billiards.potentials.companion import CompanionField, solve_f
