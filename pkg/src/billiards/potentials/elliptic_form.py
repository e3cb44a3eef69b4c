# -*- coding: utf-8 -*-
"""
基元素的椭圆坐标形式

    V(λ) = Σ_j v(λ_j) / ∏_{l≠j} (λ_j − λ_l) = v[λ_1, ..., λ_d]   （d−1 阶差商）

差商按对称函数展开，λ 重合时连续：
    t^m            → h_{m−d+1}(λ)
    (t − a)^{−j}   → (−1)^{d−1} e_d(u) h_{j−1}(u),   u_l = 1/(λ_l − a)

系数由生成函数精确给出：
    V_k   : v(t) = −Σ_r (−1)^r e_r(b) t^{d−1+k−r}
    W_k^i : v(t) = (−1)^k ∏_{j≠i} (t − b_j) · (t − b_i)^{−k}，只保留负幂部分
calibrate_coefficients 用笛卡尔坐标的值做最小二乘，可与之对照。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from billiards.config import TIE_RTOL
from billiards.confocal.elliptic import from_elliptic
from billiards.errors import CoincidentLambdas
from billiards.potentials.basis import V_KIND, basis_potential
from billiards.potentials.separability import family_b

_logger = logging.getLogger(__name__)


def elementary_symmetric(values):
    """[e_0, e_1, ..., e_n]"""
    e = [Fraction(1)] if all(isinstance(v, Fraction) for v in values) else [1.0]
    for v in values:
        e = [e[0]] + [e[r] + v * e[r - 1] for r in range(1, len(e))] + [v * e[-1]]
    return e


def complete_homogeneous(values, n_max):
    """[h_0, ..., h_{n_max}]"""
    h = [1.0] + [0.0] * n_max
    for v in values:
        for n in range(1, n_max + 1):
            h[n] = h[n] + v * h[n - 1]
    return h


def divided_difference(v, lam):
    """
    原始的部分分式求和 Σ_j v(λ_j)/∏_{l≠j}(λ_j − λ_l)

    Raises:
        CoincidentLambdas: λ 有重合
    """
    lam = [float(t) for t in lam]
    _check_distinct(lam)
    total = 0.0
    for j, lj in enumerate(lam):
        total += v(lj) / np.prod([lj - ll for l, ll in enumerate(lam) if l != j])
    return total


def _check_distinct(lam):
    for j in range(len(lam)):
        for l in range(j + 1, len(lam)):
            if abs(lam[j] - lam[l]) <= TIE_RTOL * max(1.0, abs(lam[j]), abs(lam[l])):
                raise CoincidentLambdas(f"λ_{j + 1} 与 λ_{l + 1} 重合: {lam[j]}")


@dataclass(frozen=True)
class EllipticForm:
    """
    v(t) = Σ_m poly[m] t^m + Σ_j poles[j] (t − pole)^{−j}

    Args:
        label: 基元素标签
        d (int): 维数
        poly (dict): 幂次 → 系数
        pole: 极点位置 b_i，V 型为 None
        poles (dict): j → β_j
    """

    label: str
    d: int
    poly: dict = field(default_factory=dict)
    pole: object = None
    poles: dict = field(default_factory=dict)

    def v(self, t):
        total = sum(float(c) * t ** m for m, c in self.poly.items())
        if self.pole is not None:
            total += sum(float(c) * (t - float(self.pole)) ** (-j) for j, c in self.poles.items())
        return total

    def value(self, lam):
        """对称函数展开，λ 重合时依然有效"""
        lam = [float(t) for t in lam]
        d = self.d
        total = 0.0
        if self.poly:
            top = max(self.poly)
            h = complete_homogeneous(lam, max(top - d + 1, 0))
            for m, c in self.poly.items():
                n = m - d + 1
                if n >= 0:
                    total += float(c) * h[n]
        if self.poles:
            a = float(self.pole)
            gaps = [t - a for t in lam]
            if any(abs(g) <= TIE_RTOL * max(1.0, abs(a)) for g in gaps):
                raise CoincidentLambdas(f"λ 与极点 {a} 重合")
            u = [1.0 / g for g in gaps]
            ed = float(np.prod(u))
            h = complete_homogeneous(u, max(self.poles) - 1)
            for j, c in self.poles.items():
                total += float(c) * (-1) ** (d - 1) * ed * h[j - 1]
        return total

    def to_dict(self):
        return {
            'basis': self.label,
            'poly': {str(m): str(c) for m, c in sorted(self.poly.items())},
            'pole': None if self.pole is None else str(self.pole),
            'poles': {str(j): str(c) for j, c in sorted(self.poles.items())},
        }


def elliptic_form(spec, family):
    """
    基元素对应的 v(t)，系数精确

    Args:
        spec (BasisSpec): 基元素标识
        family (ConfocalFamily): 严格的共焦族

    Returns:
        EllipticForm
    """
    family.require_strict()
    spec.check_dimension(family.d)
    b = family_b(family)
    d = len(b)
    k = spec.k
    if spec.kind == V_KIND:
        e = elementary_symmetric(list(b))
        poly = {}
        for r in range(min(k, d) + 1):
            poly[d - 1 + k - r] = -(-1) ** r * e[r]
        return EllipticForm(spec.label, d, poly=poly)

    a = spec.axis
    # ∏_{j≠i} (t − b_j) 按 s = t − b_i 展开：系数 c_q = e_{d−1−q}(b_i − b_j)
    shifted = [b[a] - b[j] for j in range(d) if j != a]
    e = elementary_symmetric(shifted)
    poles = {}
    for q in range(min(k - 1, d - 1) + 1):
        poles[k - q] = (-1) ** k * e[d - 1 - q]
    return EllipticForm(spec.label, d, pole=b[a], poles=poles)


def elliptic_form_eval(spec, family, lam, confluent=False):
    """
    在椭圆坐标处求基元素的值

    Args:
        spec (BasisSpec): 基元素标识
        family (ConfocalFamily): 严格的共焦族
        lam: EllipticCoords 或 λ 序列
        confluent (bool): 为 True 时允许 λ 重合（取极限值）

    Raises:
        CoincidentLambdas: λ 重合且 confluent 为 False，或 λ 落在极点上
    """
    lam = list(getattr(lam, 'lam', lam))
    if not confluent:
        _check_distinct([float(t) for t in lam])
    return elliptic_form(spec, family).value(lam)


def calibrate_coefficients(spec, family, points):
    """
    用笛卡尔坐标的值反解 v(t) 的系数

    Args:
        spec (BasisSpec): 基元素标识
        family (ConfocalFamily): 严格的共焦族
        points: λ 序列的列表，个数不少于未知系数个数

    Returns:
        tuple: (EllipticForm（浮点系数）, 最大相对残差)
    """
    d = family.d
    k = spec.k
    target = basis_potential(spec, family)
    if spec.kind == V_KIND:
        unknowns = [EllipticForm(spec.label, d, poly={m: 1}) for m in range(d - 1, d + k)]
    else:
        pole = family_b(family)[spec.axis]
        unknowns = [EllipticForm(spec.label, d, pole=pole, poles={j: 1}) for j in range(1, k + 1)]
    A = np.array([[u.value(lam) for u in unknowns] for lam in points])
    y = np.array([target.value(from_elliptic(family, lam)) for lam in points])
    coeffs, *_ = np.linalg.lstsq(A, y, rcond=None)
    fitted = A @ coeffs
    residual = float(np.max(np.abs(fitted - y) / np.maximum(1.0, np.abs(y))))
    _logger.info("%s 的系数标定残差 %.3e", spec.label, residual)
    if spec.kind == V_KIND:
        form = EllipticForm(spec.label, d, poly={m: float(c) for m, c in zip(range(d - 1, d + k), coeffs)})
    else:
        form = EllipticForm(spec.label, d, pole=unknowns[0].pole,
                            poles={j: float(c) for j, c in zip(range(1, k + 1), coeffs)})
    return form, residual
