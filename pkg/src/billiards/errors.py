# -*- coding: utf-8 -*-
"""
异常定义

所有模块抛出的异常都继承自 BilliardsError，每个子类带有独立的退出码，
命令行入口据此设置进程退出状态。
"""


class BilliardsError(Exception):
    """库内所有异常的基类"""

    exit_code = 2

    def to_dict(self):
        """
        转换为机器可读的错误块

        Returns:
            dict: 包含 error / message / exit_code 的字典
        """
        return {
            'error': type(self).__name__,
            'message': str(self),
            'exit_code': self.exit_code,
        }


# ---- 共焦几何 ----

class NonStrictFamily(BilliardsError):
    exit_code = 10


class DegenerateChart(BilliardsError):
    exit_code = 11


class InterlacingViolated(BilliardsError):
    exit_code = 12


class DegenerateLine(BilliardsError):
    exit_code = 13


class OrderingViolated(BilliardsError):
    exit_code = 14


class OutsideModel(BilliardsError):
    exit_code = 15


# ---- Cayley 判据 ----

class ZeroAtOrigin(BilliardsError):
    exit_code = 20


class InsufficientOrder(BilliardsError):
    exit_code = 21


class ZeroParameter(BilliardsError):
    exit_code = 22


class HigherMultiplicity(BilliardsError):
    exit_code = 23


class NoRootInBracket(BilliardsError):
    exit_code = 24


# ---- 动力学 ----

class TangentialImpact(BilliardsError):
    exit_code = 30


# 沿轨迹传播时使用的名称
GrazingSegment = TangentialImpact


class LeftModel(BilliardsError):
    exit_code = 31


class EnergyBelowPotential(BilliardsError):
    exit_code = 32


# ---- 度量层级 ----

class SingularL(BilliardsError):
    exit_code = 40


# ---- 可分离势 ----

class CoincidentLambdas(BilliardsError):
    exit_code = 50


class UnderdeterminedNormalization(BilliardsError):
    exit_code = 51


class NotSeparable(BilliardsError):
    exit_code = 52


# ---- 命令行与输出 ----

class UnknownCommand(BilliardsError):
    exit_code = 60


class BadParameter(BilliardsError):
    """参数错误，记录出错的键名与期望格式"""

    exit_code = 61

    def __init__(self, key, expected):
        self.key = key
        self.expected = expected
        super().__init__(f"参数 '{key}' 无效: {expected}")

    def to_dict(self):
        block = super().to_dict()
        block['key'] = self.key
        return block


class ReportIoError(BilliardsError):
    exit_code = 62


class ArchiveError(BilliardsError):
    exit_code = 70
