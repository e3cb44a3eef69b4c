# -*- coding: utf-8 -*-
"""
周期判据矩阵

第 r 行 (1 ≤ r ≤ n−1)、第 j 列 (0 ≤ j ≤ n−d) 的元素为 T_{n+r−j}：
    第一行 (T_{n+1}, ..., T_{d+1})，最后一行 (T_{2n−1}, ..., T_{n+d−1})
公因子 B_0 不改变秩，因此直接使用 T_k。
"""

from billiards.errors import InsufficientOrder, BadParameter


def hankel_shape(n, d):
    return n - 1, n - d + 1


def hankel_matrix(series, n, d):
    """
    组装 (n−1) × (n−d+1) 矩阵

    Args:
        series (RationalSeries): 归一化平方根级数
        n (int): 周期
        d (int): 维数

    Returns:
        list: 行列表，元素为 Fraction

    Raises:
        BadParameter: n < d
        InsufficientOrder: 级数阶数小于 2n−1
    """
    if n < d:
        raise BadParameter('n', f"矩阵只对 n ≥ d = {d} 有定义")
    if series.order < 2 * n - 1:
        raise InsufficientOrder(f"需要阶数 ≥ {2 * n - 1}，实际为 {series.order}")
    rows, cols = hankel_shape(n, d)
    return [[series[n + r - j] for j in range(cols)] for r in range(1, rows + 1)]
