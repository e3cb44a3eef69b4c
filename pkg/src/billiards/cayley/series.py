# -*- coding: utf-8 -*-
"""
有理系数形式幂级数的平方根

sqrt(P(x)) = B_0 · Σ T_k x^k,  B_0² = P(0),  T_0 = 1
只保存 T_k，无理因子 B_0 不参与运算。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from billiards.errors import ZeroAtOrigin, BadParameter
from billiards.exact import format_number, parse_number

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalSeries:
    """
    截断幂级数 Σ_{k≤N} T_k x^k

    Args:
        coeffs: T_0..T_N，T_0 = 1
        b0_squared: P(0)
    """

    coeffs: tuple
    b0_squared: Fraction

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def dump(self):
        """每行一个 "p/q"，按下标排列"""
        return '\n'.join(str(format_number(Fraction(c))) for c in self.coeffs) + '\n'

    @classmethod
    def load(cls, text, b0_squared):
        coeffs = tuple(Fraction(parse_number(line)) for line in text.splitlines() if line.strip())
        return cls(coeffs, Fraction(b0_squared))


def poly_from_roots(roots):
    """∏ (x − r) 的升幂系数"""
    poly = [Fraction(1)]
    for r in roots:
        r = Fraction(r)
        shifted = [Fraction(0)] + poly
        for k, c in enumerate(poly):
            shifted[k] -= r * c
        poly = shifted
    return poly


def series_mul(p, q, order):
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(p[:order + 1]):
        if a == 0:
            continue
        for j, b in enumerate(q[:order + 1 - i]):
            out[i + j] += a * b
    return out


def series_inverse(p, order):
    """常数项非零的级数求逆"""
    inv = [Fraction(1) / p[0]]
    for k in range(1, order + 1):
        acc = sum((p[j] * inv[k - j] for j in range(1, min(k, len(p) - 1) + 1)), Fraction(0))
        inv.append(-acc * inv[0])
    return inv


def _pad(p, order):
    p = list(p[:order + 1])
    return p + [Fraction(0)] * (order + 1 - len(p))


def _sqrt_newton(q, order):
    """T ← (T + Q/T)/2，每步精度加倍"""
    t = [Fraction(1)]
    precision = 1
    while precision < order + 1:
        precision = min(2 * precision, order + 1)
        inv = series_inverse(_pad(t, precision - 1), precision - 1)
        quotient = series_mul(_pad(q, precision - 1), inv, precision - 1)
        t = [(a + b) / 2 for a, b in zip(_pad(t, precision - 1), quotient)]
    return _pad(t, order)


def _sqrt_recurrence(q, order):
    """T_k = (Q_k − Σ_{j=1}^{k−1} T_j T_{k−j}) / 2"""
    t = [Fraction(1)]
    for k in range(1, order + 1):
        acc = sum((t[j] * t[k - j] for j in range(1, k)), Fraction(0))
        t.append((q[k] - acc) / 2)
    return t


def sqrt_series(P, N):
    """
    归一化平方根级数

    Args:
        P: 升幂排列的有理系数
        N: 截断阶数

    Returns:
        RationalSeries: (Σ T_k x^k)² ≡ P/P(0) mod x^{N+1}

    Raises:
        ZeroAtOrigin: P(0) = 0
        BadParameter: deg P < 1 或 N < 0
    """
    P = [Fraction(c) for c in P]
    while len(P) > 1 and P[-1] == 0:
        P.pop()
    if len(P) < 2:
        raise BadParameter('P', "需要次数 ≥ 1 的多项式")
    if N < 0:
        raise BadParameter('N', "截断阶数必须 ≥ 0")
    if P[0] == 0:
        raise ZeroAtOrigin("P(0) = 0：有根落在 x = 0，级数展开无定义")

    q = _pad([c / P[0] for c in P], N)
    newton = _sqrt_newton(q, N)
    direct = _sqrt_recurrence(q, N)
    if newton != direct:
        raise ArithmeticError("Newton 迭代与直接递推结果不一致")
    if series_mul(newton, newton, N) != q:
        raise ArithmeticError("平方校验失败")
    _logger.debug("sqrt_series: 阶数 %d, P(0) = %s", N, P[0])
    return RationalSeries(tuple(newton), P[0])
