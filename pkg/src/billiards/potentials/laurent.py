# -*- coding: utf-8 -*-
"""
有理系数的 Laurent 多项式

    V(x) = Σ p_I x^I,   I = (i_1, ..., i_d) 可以含负整数

系数一律是 Fraction，不存零系数。文本格式每行一项：
    "i_1 i_2 ... i_d : p/q"
"""

import logging
from fractions import Fraction
from numbers import Rational

import numpy as np
import sympy

from billiards.errors import BadParameter
from billiards.exact import format_number

_logger = logging.getLogger(__name__)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, Rational) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, float):
        # 二进制浮点数本身是精确的有理数
        return Fraction(value)
    raise BadParameter('coefficient', f"需要有理数，得到 {value!r}")


class LaurentPolynomial:
    """
    Laurent 多项式，不可变

    Args:
        terms (dict): 指数元组 → 系数
        d (int): 变量个数，terms 为空时必须给出
    """

    __slots__ = ('_terms', '_d')

    def __init__(self, terms=None, d=None):
        terms = dict(terms or {})
        if d is None:
            if not terms:
                raise BadParameter('d', "空多项式需要显式给出变量个数")
            d = len(next(iter(terms)))
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != d:
                raise BadParameter('terms', f"指数 {exps} 的长度不是 {d}")
            coeff = _as_fraction(coeff)
            if coeff != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if clean[exps] == 0:
                    del clean[exps]
        self._terms = clean
        self._d = d

    # ---- 构造 ----

    @classmethod
    def zero(cls, d):
        return cls({}, d)

    @classmethod
    def constant(cls, value, d):
        return cls({(0,) * d: value}, d)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def variable(cls, j, d, power=1):
        exps = [0] * d
        exps[j] = power
        return cls.monomial(exps)

    # ---- 基本属性 ----

    @property
    def d(self):
        return self._d

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self._terms

    def is_polynomial(self):
        return all(min(exps) >= 0 for exps in self._terms)

    def exponent_bounds(self):
        """(k_−, k_+)：所有指数分量的最小值与最大值"""
        if not self._terms:
            return 0, 0
        flat = [e for exps in self._terms for e in exps]
        return min(flat), max(flat)

    def total_degrees(self):
        return sorted({sum(exps) for exps in self._terms})

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._d == other._d and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(other, self._d)
        return NotImplemented

    def __hash__(self):
        return hash((self._d, frozenset(self._terms.items())))

    def __repr__(self):
        return f"LaurentPolynomial({self.render()})"

    # ---- 运算 ----

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other._d != self._d:
                raise BadParameter('d', f"变量个数不一致: {self._d} 与 {other._d}")
            return other
        return LaurentPolynomial.constant(_as_fraction(other), self._d)

    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return LaurentPolynomial(terms, self._d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self._d)

    def __sub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, np.ndarray):
            # 交给 numpy 逐元素计算
            return NotImplemented
        if not isinstance(other, LaurentPolynomial):
            c = _as_fraction(other)
            return LaurentPolynomial({e: c * v for e, v in self._terms.items()}, self._d)
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(terms, self._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("Laurent 多项式除以 0")
        return self * (1 / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise BadParameter('n', "只支持非负整数次幂")
        out = LaurentPolynomial.constant(1, self._d)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, j, power):
        """乘以 x_j^power"""
        terms = {}
        for exps, coeff in self._terms.items():
            e = list(exps)
            e[j] += power
            terms[tuple(e)] = coeff
        return LaurentPolynomial(terms, self._d)

    def diff(self, j):
        """∂/∂x_j"""
        terms = {}
        for exps, coeff in self._terms.items():
            if exps[j] != 0:
                e = list(exps)
                e[j] -= 1
                terms[tuple(e)] = coeff * exps[j]
        return LaurentPolynomial(terms, self._d)

    def integrate(self, j):
        """
        对 x_j 逐项求原函数（不含常数）

        Raises:
            ValueError: 出现 x_j^{−1}，原函数不在 Laurent 类中
        """
        terms = {}
        for exps, coeff in self._terms.items():
            if exps[j] == -1:
                raise ValueError(f"x_{j + 1}^-1 的原函数含对数")
            e = list(exps)
            e[j] += 1
            terms[tuple(e)] = coeff / e[j]
        return LaurentPolynomial(terms, self._d)

    def euler(self):
        """Σ x_k ∂_k V = Σ |I| p_I x^I"""
        return LaurentPolynomial({e: c * sum(e) for e, c in self._terms.items()}, self._d)

    def axis_part(self, j):
        """只含 x_j 的项，返回 {幂次: 系数}"""
        out = {}
        for exps, coeff in self._terms.items():
            if all(e == 0 for m, e in enumerate(exps) if m != j):
                out[exps[j]] = coeff
        return out

    def depends_on(self, j):
        return any(exps[j] != 0 for exps in self._terms)

    # ---- 求值 ----

    def evaluate_exact(self, x):
        x = [_as_fraction(v) for v in x]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for xi, e in zip(x, exps):
                term *= xi ** e
            total += term
        return total

    def value(self, x):
        """浮点求值"""
        x = np.asarray(x, dtype=float)
        total = 0.0
        for exps, coeff in self._terms.items():
            total += float(coeff) * float(np.prod(x ** np.array(exps, dtype=float)))
        return total

    def gradient(self, x):
        return np.array([self.diff(j).value(x) for j in range(self._d)])

    __call__ = value

    # ---- 转换与序列化 ----

    def symbols(self):
        return sympy.symbols(f'x1:{self._d + 1}')

    def to_sympy(self, symbols=None):
        symbols = symbols or self.symbols()
        expr = sympy.Integer(0)
        for exps, coeff in self.items():
            term = sympy.Rational(coeff.numerator, coeff.denominator)
            for s, e in zip(symbols, exps):
                term *= s ** e
            expr += term
        return expr

    @classmethod
    def from_sympy(cls, expr, symbols):
        """
        从 sympy 表达式读取，必须是 symbols 的 Laurent 多项式

        Raises:
            BadParameter: 含有其它符号或非整数幂
        """
        d = len(symbols)
        terms = {}
        for term in sympy.Add.make_args(sympy.expand(expr)):
            if term == 0:
                continue
            coeff, rest = term.as_coeff_Mul()
            powers = rest.as_powers_dict() if rest != 1 else {}
            extra = [s for s in powers if s not in symbols]
            if extra or not coeff.is_Rational:
                raise BadParameter('expr', f"项 {term} 不是 Laurent 单项式")
            exps = []
            for s in symbols:
                e = powers.get(s, 0)
                if not sympy.sympify(e).is_Integer:
                    raise BadParameter('expr', f"项 {term} 含非整数幂")
                exps.append(int(e))
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
        return cls(terms, d)

    def render(self):
        """人读形式"""
        if not self._terms:
            return '0'
        return sympy.sstr(self.to_sympy())

    def to_lines(self):
        """每行 "i_1 ... i_d : p/q"，按指数排序"""
        return [' '.join(str(e) for e in exps) + ' : ' + format_number(coeff)
                for exps, coeff in self.items()]

    def dump(self):
        return '\n'.join(self.to_lines()) + '\n'

    @classmethod
    def load(cls, text, d=None):
        """
        dump 的逆操作

        Raises:
            BadParameter: 行格式不对
        """
        terms = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            try:
                lhs, rhs = line.split(':')
                exps = tuple(int(v) for v in lhs.split())
                num, _, den = rhs.strip().partition('/')
                coeff = Fraction(int(num), int(den or 1))
            except ValueError:
                raise BadParameter('laurent', f"第 {lineno} 行应为 'i_1 ... i_d : p/q'")
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return cls(terms, d)


def sum_of_squares(d, weights=None):
    """Σ w_j x_j²，默认 w_j = 1"""
    weights = weights or [1] * d
    return LaurentPolynomial({tuple(2 if m == j else 0 for m in range(d)): weights[j] for j in range(d)}, d)
