# -*- coding: utf-8 -*-
"""
可分离势的基

    V_k     : 2k 次偶多项式
    W_k^i   : x_i^{−2k} 乘以 2(k−1) 次偶多项式

生成方式：在候选单项式上列出系数递推的线性方程组，精确求零空间，
再用归一化条件取出唯一的元素：
    V_k 限制到 x_1 轴上等于 x_1² (b_1 − x_1²)^{k−1}
    W_k^i 只含 x_i 的部分恰为 x_i^{−2k}
k ≤ 3 时另有闭式目录，V_k 还有生成函数
    V_k = −[ε^k] (1 + ε Σ_j x_j² / (1 − ε b_j))^{−1}
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from billiards.cayley.linalg import nullspace_exact
from billiards.errors import BadParameter, UnderdeterminedNormalization
from billiards.potentials.laurent import LaurentPolynomial, sum_of_squares
from billiards.potentials.separability import family_b, recurrence_instances

_logger = logging.getLogger(__name__)

V_KIND = 'V'
W_KIND = 'W'

# 闭式目录覆盖的最高 k
CATALOG_MAX_K = 3

_LABEL = re.compile(r'^([VvWw])(\d+)(?:[_:,](\d+))?$')


@dataclass(frozen=True)
class BasisSpec:
    """
    基元素的标识

    Args:
        kind: 'V' 或 'W'
        k (int): k ≥ 1
        i (int): W 的轴下标，1 起始
    """

    kind: str
    k: int
    i: int = None

    def __post_init__(self):
        if self.kind not in (V_KIND, W_KIND):
            raise BadParameter('kind', "只能是 V 或 W")
        if not isinstance(self.k, int) or self.k < 1:
            raise BadParameter('k', "k 必须是 ≥ 1 的整数")
        if self.kind == W_KIND and (not isinstance(self.i, int) or self.i < 1):
            raise BadParameter('i', "W 需要 1 起始的轴下标 i")
        if self.kind == V_KIND and self.i is not None:
            raise BadParameter('i', "V 不带轴下标")

    @classmethod
    def parse(cls, text):
        """'V3'、'W2_1' 之类的标签"""
        m = _LABEL.match(text.strip())
        if not m:
            raise BadParameter('basis', "形如 V3 或 W2_1")
        kind, k, i = m.group(1).upper(), int(m.group(2)), m.group(3)
        return cls(kind, k, int(i) if i is not None else None)

    @property
    def label(self):
        return f'{self.kind}{self.k}' if self.kind == V_KIND else f'{self.kind}{self.k}_{self.i}'

    @property
    def axis(self):
        """0 起始的轴下标"""
        return None if self.i is None else self.i - 1

    def check_dimension(self, d):
        if self.kind == W_KIND and not 1 <= self.i <= d:
            raise BadParameter('i', f"需要 1 ≤ i ≤ {d}")


def _even_exponents(d, half_max, half_min=0):
    """各分量为非负偶数、总次数在 [2·half_min, 2·half_max] 的指数"""
    for half in itertools.product(range(half_max + 1), repeat=d):
        if half_min <= sum(half) <= half_max:
            yield tuple(2 * h for h in half)


def candidate_exponents(spec, d):
    if spec.kind == V_KIND:
        return sorted(_even_exponents(d, spec.k, 1))
    a = spec.axis
    out = []
    for exps in _even_exponents(d, spec.k - 1):
        e = list(exps)
        e[a] -= 2 * spec.k
        out.append(tuple(e))
    return sorted(out)


def recurrence_rows(candidates, b):
    """
    候选单项式上的递推方程组

    未知数为候选单项式的系数；其它单项式的系数视为 0。
    """
    index = {exps: n for n, exps in enumerate(candidates)}
    d = len(b)
    rows = []
    seen = set()
    for k in range(d):
        for l in range(k + 1, d):
            for exps in recurrence_instances(candidates, k, l):
                row = [Fraction(0)] * len(candidates)
                ik, il = exps[k], exps[l]
                total = sum(exps)
                if exps in index:
                    row[index[exps]] += (b[k] - b[l]) * ik * il
                down_k = tuple(e - 2 * (m == k) for m, e in enumerate(exps))
                down_l = tuple(e - 2 * (m == l) for m, e in enumerate(exps))
                if down_k in index:
                    row[index[down_k]] -= total * il
                if down_l in index:
                    row[index[down_l]] += total * ik
                key = tuple(row)
                if any(row) and key not in seen:
                    seen.add(key)
                    rows.append(row)
    return rows


def normalization_targets(spec, b):
    """归一化条件：{指数: 目标系数}"""
    d = len(b)
    k = spec.k
    targets = {}
    if spec.kind == V_KIND:
        # x_1² (b_1 − x_1²)^{k−1}
        for m in range(k):
            exps = (2 + 2 * m,) + (0,) * (d - 1)
            targets[exps] = comb(k - 1, m) * b[0] ** (k - 1 - m) * (-1) ** m
    else:
        a = spec.axis
        for m in range(1, k + 1):
            exps = tuple(-2 * m if j == a else 0 for j in range(d))
            targets[exps] = Fraction(int(m == k))
    return targets


def _combine(kernel, candidates, targets, spec):
    """在零空间里解归一化条件，解必须唯一"""
    index = {exps: n for n, exps in enumerate(candidates)}
    r = len(kernel)
    system = []
    for exps, value in targets.items():
        row = [kernel[s][index[exps]] if exps in index else Fraction(0) for s in range(r)]
        system.append(row + [-Fraction(value)])
    solutions = nullspace_exact(system, r + 1)
    if len(solutions) != 1 or solutions[0][r] == 0:
        raise UnderdeterminedNormalization(
            f"{spec.label}: 零空间维数 {r}，归一化方程组的解空间维数 {len(solutions)}"
        )
    coeffs = [c / solutions[0][r] for c in solutions[0][:r]]
    terms = {}
    for s, c in enumerate(coeffs):
        if c:
            for n, v in enumerate(kernel[s]):
                if v:
                    terms[candidates[n]] = terms.get(candidates[n], Fraction(0)) + c * v
    return terms


@lru_cache(maxsize=64)
def _generate(spec, b):
    d = len(b)
    candidates = candidate_exponents(spec, d)
    rows = recurrence_rows(candidates, b)
    kernel = nullspace_exact(rows, len(candidates))
    _logger.info("%s: %d 个候选单项式，%d 条方程，零空间维数 %d",
                 spec.label, len(candidates), len(rows), len(kernel))
    if len(kernel) != spec.k:
        raise UnderdeterminedNormalization(f"{spec.label}: 零空间维数 {len(kernel)}，预期 {spec.k}")
    return LaurentPolynomial(_combine(kernel, candidates, normalization_targets(spec, b), spec), d)


def basis_potential(spec, family):
    """
    解系数递推生成基元素

    Args:
        spec (BasisSpec): 基元素标识
        family (ConfocalFamily): 严格的共焦族

    Returns:
        LaurentPolynomial: 归一化后的势

    Raises:
        UnderdeterminedNormalization: 零空间维数与预期不符
        NonStrictFamily: b 有重复
    """
    family.require_strict()
    spec.check_dimension(family.d)
    return _generate(spec, family_b(family))


def _weighted_squares(b, power):
    return sum_of_squares(len(b), [bj ** power for bj in b])


def catalog_potential(spec, family):
    """
    k ≤ 3 的闭式目录

        V_1 = Σ x²
        V_2 = Σ b x² − (Σ x²)²
        V_3 = Σ b² x² − 2 (Σ x²)(Σ b x²) + (Σ x²)³
        W_1^i = x_i^{−2}
        W_2^i = x_i^{−4} (1 + Σ_{j≠i} x_j²/(b_i − b_j))
        W_3^i = x_i^{−6} (1 + 2 Σ_{j≠i} x_j²/(b_i − b_j)
                           + Σ_{j,l≠i} x_j² x_l² / ((b_i − b_j)(b_i − b_l))
                           + Σ_{j≠i} x_i² x_j² / (b_i − b_j)²)
    """
    family.require_strict()
    spec.check_dimension(family.d)
    if spec.k > CATALOG_MAX_K:
        raise BadParameter('k', f"闭式目录只有 k ≤ {CATALOG_MAX_K}")
    b = family_b(family)
    d = len(b)
    r = sum_of_squares(d)
    if spec.kind == V_KIND:
        if spec.k == 1:
            return r
        if spec.k == 2:
            return _weighted_squares(b, 1) - r ** 2
        return _weighted_squares(b, 2) - 2 * r * _weighted_squares(b, 1) + r ** 3

    a = spec.axis
    one = LaurentPolynomial.constant(1, d)
    ratio = LaurentPolynomial.zero(d)
    mixed = LaurentPolynomial.zero(d)
    for j in range(d):
        if j != a:
            xj2 = LaurentPolynomial.variable(j, d, 2)
            ratio = ratio + xj2 / (b[a] - b[j])
            mixed = mixed + LaurentPolynomial.variable(a, d, 2) * xj2 / (b[a] - b[j]) ** 2
    if spec.k == 1:
        body = one
    elif spec.k == 2:
        body = one + ratio
    else:
        body = one + 2 * ratio + ratio ** 2 + mixed
    return body.shift(a, -2 * spec.k)


def generating_potential(k, family):
    """
    由生成函数展开得到 V_k，作为解方程组之外的独立对照
    """
    if k < 1:
        raise BadParameter('k', "k 必须是 ≥ 1 的整数")
    b = family_b(family)
    d = len(b)
    # 1 + ε s(ε) 的系数，s(ε) = Σ_m ε^m Σ_j b_j^m x_j²
    series = [LaurentPolynomial.constant(1, d)] + [_weighted_squares(b, m - 1) for m in range(1, k + 1)]
    inverse = [LaurentPolynomial.constant(1, d)]
    for n in range(1, k + 1):
        acc = LaurentPolynomial.zero(d)
        for m in range(1, n + 1):
            acc = acc + series[m] * inverse[n - m]
        inverse.append(-acc)
    return -inverse[k]


def basis_document(spec, family, V):
    """基元素的可序列化形式"""
    return {
        'basis': spec.label,
        'lines': V.to_lines(),
        'rendered': V.render(),
    }
