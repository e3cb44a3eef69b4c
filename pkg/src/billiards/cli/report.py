# -*- coding: utf-8 -*-
"""
报告输出

报告文档是 JSON（键排序、固定缩进、不含时间戳），同一场景与种子的重复运行逐字节相同；
format 为 table 时另写一份逗号分隔的表格，供外部绘图使用。
"""

import json
import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from billiards import REPORT_SCHEMA, __version__
from billiards.errors import ReportIoError
from billiards.exact import format_number

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Report:
    """
    一次运行的结果

    Args:
        command: 命令名
        mode: exact 或 float
        seed: 使用的随机种子，没有随机性时为 None
        result (dict): 命令的结果
        table (str): CSV 文本，没有表格时为 None
    """

    command: str
    mode: str
    seed: object
    result: dict
    table: str = None

    def document(self):
        return {
            'schema': REPORT_SCHEMA,
            'version': __version__,
            'command': self.command,
            'mode': self.mode,
            'seed': self.seed,
            'result': to_jsonable(self.result),
        }


def to_jsonable(value):
    """递归转换为 JSON 可表示的值，有理数写成 "p/q" 字符串"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Fraction):
        return format_number(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return value
    if value is None or isinstance(value, str):
        return value
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    return str(value)


def render_document(report):
    return json.dumps(report.document(), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def emit_report(report, output, fmt='report'):
    """
    写出报告文件

    Args:
        report (Report): 运行结果
        output (str): 输出目录
        fmt: report 只写 JSON；table 同时写 CSV 表格

    Returns:
        list: 写出的文件路径

    Raises:
        ReportIoError: 目录或文件不可写
    """
    stem = report.command.replace('-', '_')
    paths = []
    try:
        os.makedirs(output, exist_ok=True)
        path = os.path.join(output, f'{stem}.json')
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(render_document(report))
        paths.append(path)
        if fmt == 'table' and report.table is not None:
            path = os.path.join(output, f'{stem}.csv')
            with open(path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(report.table)
            paths.append(path)
    except OSError as e:
        raise ReportIoError(f"无法写出报告到 {output}: {e}")
    _logger.info("报告已写出: %s", ', '.join(paths))
    return paths
