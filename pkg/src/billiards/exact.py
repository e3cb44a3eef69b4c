# -*- coding: utf-8 -*-
"""
精确有理数与浮点数两条计算路径的公共工具
"""

from fractions import Fraction
from numbers import Rational

import numpy as np


def is_exact(values):
    """
    判断一组数是否全部为精确有理数

    Args:
        values: 数或数的序列

    Returns:
        bool: 全部为 int / Fraction 时为 True (bool 不算)
    """
    if isinstance(values, (list, tuple, np.ndarray)):
        return all(is_exact(v) for v in values)
    return isinstance(values, Rational) and not isinstance(values, bool)


def parse_number(text):
    """
    解析命令行数值: "p/q" 或整数解析为 Fraction，其余解析为 float

    Args:
        text (str): 输入文本

    Returns:
        Fraction | float: 解析结果

    Raises:
        ValueError: 无法解析时
    """
    text = text.strip()
    if '/' in text:
        num, den = text.split('/', 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)


def parse_vector(text):
    """逗号分隔的向量"""
    return tuple(parse_number(part) for part in text.split(',') if part.strip())


def format_number(value):
    """
    序列化数值，有理数写成 "p/q" 以保持精确

    Args:
        value: Fraction / int / float

    Returns:
        str | float: 有理数返回字符串，浮点数原样返回
    """
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return float(value)


def read_number(value):
    """format_number 的逆操作"""
    if isinstance(value, str):
        return parse_number(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return float(value)


def as_float_array(values):
    return np.array([float(v) for v in values], dtype=float)


def arithmetic_mode(values):
    return 'exact' if is_exact(list(values)) else 'float'
