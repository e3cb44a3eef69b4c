# -*- coding: utf-8 -*-
"""
可分离性判定

偏微分方程组（每对 i < j 一个残差）：
    R_ij = (b_i − b_j) ∂_i∂_j V + (x_j ∂_i − x_i ∂_j)(2V + Σ_k x_k ∂_k V)

等价的系数递推（对每个指数 I 与每对 k < l）：
    (b_k − b_l) i_k i_l p_I = |I| (i_l p_{I−2e_k} − i_k p_{I−2e_l})
R_kl 在 x^{I−e_k−e_l} 处的系数正好是左边减右边。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from billiards.exact import format_number

_logger = logging.getLogger(__name__)


def family_b(family):
    """共焦参数的精确形式"""
    return tuple(Fraction(v) for v in family.b)


def separability_residual(V, family):
    """
    计算全部残差

    Args:
        V (LaurentPolynomial): 势
        family (ConfocalFamily): 共焦族

    Returns:
        dict: (i, j) → LaurentPolynomial，0 起始下标，i < j
    """
    b = family_b(family)
    d = V.d
    bracket = 2 * V + V.euler()
    out = {}
    for i in range(d):
        for j in range(i + 1, d):
            mixed = V.diff(i).diff(j) * (b[i] - b[j])
            rotation = bracket.diff(i).shift(j, 1) - bracket.diff(j).shift(i, 1)
            out[(i, j)] = mixed + rotation
    return out


def is_separable(V, family):
    return all(r.is_zero() for r in separability_residual(V, family).values())


@dataclass(frozen=True)
class RecurrenceViolation:
    """不成立的一条递推关系"""

    k: int
    l: int
    exponent: tuple
    lhs: Fraction
    rhs: Fraction

    def to_dict(self):
        return {
            'pair': [self.k + 1, self.l + 1],
            'exponent': list(self.exponent),
            'lhs': format_number(self.lhs),
            'rhs': format_number(self.rhs),
        }


def _shift(exps, j, step):
    e = list(exps)
    e[j] += step
    return tuple(e)


def recurrence_instances(support, k, l):
    """与支撑集相关的全部指数 I：I、I−2e_k、I−2e_l 之一落在支撑集中"""
    out = set()
    for exps in support:
        out.add(exps)
        out.add(_shift(exps, k, 2))
        out.add(_shift(exps, l, 2))
    return sorted(out)


def recurrence_check(V, family):
    """
    逐条检查系数递推

    Args:
        V (LaurentPolynomial): 势
        family (ConfocalFamily): 共焦族

    Returns:
        tuple: (是否全部成立, 第一条不成立的 RecurrenceViolation 或 None)
    """
    b = family_b(family)
    d = V.d
    support = list(V.terms)
    for k in range(d):
        for l in range(k + 1, d):
            for exps in recurrence_instances(support, k, l):
                ik, il = exps[k], exps[l]
                total = sum(exps)
                lhs = (b[k] - b[l]) * ik * il * V.coefficient(exps)
                rhs = total * (il * V.coefficient(_shift(exps, k, -2)) - ik * V.coefficient(_shift(exps, l, -2)))
                if lhs != rhs:
                    violation = RecurrenceViolation(k, l, exps, lhs, rhs)
                    _logger.debug("递推不成立: %s", violation)
                    return False, violation
    return True, None


def residual_document(V, family):
    """残差的可序列化形式，键为 "i,j"（1 起始）"""
    return {
        f'{i + 1},{j + 1}': r.to_lines()
        for (i, j), r in sorted(separability_residual(V, family).items())
    }
