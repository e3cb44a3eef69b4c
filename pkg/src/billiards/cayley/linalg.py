# -*- coding: utf-8 -*-
"""
有理数矩阵的精确线性代数

    rank_exact        - Bareiss 无分式消元（全主元），先把每行缩放为整数
    determinant_exact - 同一消元过程的行列式
    nullspace_exact   - 行最简形求零空间基
    rank_float        - 浮点奇异值秩，作为独立对照
    scaled_min_singular_value - 按列缩放后的最小奇异值，周期判据的连续替代量
"""

import math
from fractions import Fraction

import numpy as np


def _integer_rows(M):
    """每行乘以分母的最小公倍数，秩不变"""
    rows = []
    for row in M:
        row = [Fraction(v) for v in row]
        scale = 1
        for v in row:
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
        rows.append([int(v * scale) for v in row])
    return rows


def _bareiss(A):
    """
    原地做全主元 Bareiss 消元

    Returns:
        tuple: (秩, 行列式符号, 最后一个主元)
    """
    m = len(A)
    n = len(A[0]) if m else 0
    prev = 1
    sign = 1
    rank = 0
    for k in range(min(m, n)):
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        if i != k:
            A[i], A[k] = A[k], A[i]
            sign = -sign
        if j != k:
            for row in A:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        for r in range(k + 1, m):
            for c in range(k + 1, n):
                A[r][c] = (A[r][c] * A[k][k] - A[r][k] * A[k][c]) // prev
            A[r][k] = 0
        prev = A[k][k]
        rank += 1
    return rank, sign, prev


def rank_exact(M):
    """
    有理数矩阵的精确秩

    Args:
        M: 行的序列，元素为 int / Fraction

    Returns:
        int: 秩
    """
    if not len(M) or not len(M[0]):
        return 0
    rank, _, _ = _bareiss(_integer_rows(M))
    return rank


def determinant_exact(M):
    """方阵的精确行列式"""
    n = len(M)
    if n == 0:
        return Fraction(1)
    scales = []
    for row in M:
        scale = 1
        for v in row:
            v = Fraction(v)
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
        scales.append(scale)
    rank, sign, last = _bareiss(_integer_rows(M))
    if rank < n:
        return Fraction(0)
    return Fraction(sign * last, math.prod(scales))


def nullspace_exact(M, n_cols=None):
    """
    行最简形求零空间

    Args:
        M: 行的序列
        n_cols: M 为空时的列数

    Returns:
        list: 零空间基向量（Fraction 列表），每个自由变量对应一个
    """
    rows = [[Fraction(v) for v in row] for row in M]
    n = len(rows[0]) if rows else n_cols
    pivots = []
    piv_r = 0
    for piv_c in range(n):
        for i in range(piv_r, len(rows)):
            if rows[i][piv_c] != 0:
                break
        else:
            continue
        rows[piv_r], rows[i] = rows[i], rows[piv_r]
        fp = rows[piv_r][piv_c]
        rows[piv_r] = [v / fp for v in rows[piv_r]]
        for r in range(len(rows)):
            if r != piv_r and rows[r][piv_c] != 0:
                fr = rows[r][piv_c]
                rows[r] = [a - fr * b for a, b in zip(rows[r], rows[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == len(rows):
            break

    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def rank_float(M, tol=1e-9):
    """
    浮点秩：行归一化后统计大于 tol·σ_max 的奇异值

    Args:
        M: 矩阵
        tol: 相对阈值
    """
    A = np.array([[float(v) for v in row] for row in M], dtype=float)
    if A.size == 0:
        return 0
    norms = np.linalg.norm(A, axis=1)
    norms[norms == 0] = 1.0
    s = np.linalg.svd(A / norms[:, None], compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def column_scales(M):
    """每列绝对值的最大值（全零列取 1）"""
    return [max(abs(row[j]) for row in M) or Fraction(1) for j in range(len(M[0]))]


def scaled_min_singular_value(M):
    """
    有理矩阵按列缩放、列归一化后的最小奇异值

    缩放在有理数上完成，系数跨越很多数量级时转浮点也不溢出。

    Args:
        M: 有理数矩阵（行列表）

    Returns:
        float: 非负标量，秩亏时为 0 附近
    """
    scales = column_scales(M)
    A = np.array([[float(Fraction(v) / s) for v, s in zip(row, scales)] for row in M], dtype=float)
    norms = np.linalg.norm(A, axis=0)
    norms[norms == 0] = 1.0
    return float(np.linalg.svd(A / norms, compute_uv=False)[-1])
