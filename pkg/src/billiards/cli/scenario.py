# -*- coding: utf-8 -*-
"""
场景解析

命令行参数与 JSON 场景文件合并，命令行优先。数值参数写成 "p/q" 或整数时
按精确有理数处理，其余按浮点数处理；向量用逗号分隔。
"""

import argparse
import json
import logging
from dataclasses import dataclass, field

from billiards.config import output_dir
from billiards.errors import UnknownCommand, BadParameter, ReportIoError
from billiards.exact import parse_number, parse_vector, read_number, arithmetic_mode

_logger = logging.getLogger(__name__)

REPORT_FORMATS = ('report', 'table')

# 每个命令的参数：键 → (类型, 是否必需, 默认值, 说明)
PARAMETERS = {
    'cayley': {
        'a': ('vector', True, None, "a_0,...,a_d"),
        'mu': ('vector', True, None, "μ_1,...,μ_{d−1}"),
        'n': ('int', True, None, "周期 n ≥ 1"),
        'route': ('choice:full,normalized', False, 'full', "级数路线"),
    },
    'scan-periods': {
        'a': ('vector', True, None, "a_0,...,a_d"),
        'n': ('int', True, None, "周期 n ≥ 2"),
        'bracket': ('vector', False, None, "lo,hi"),
        'mu_fixed': ('vector', False, (), "其余 d−2 个固定的 μ"),
        'free_index': ('int', False, 0, "自由参数在 μ 中的位置"),
        'samples': ('int', False, 240, "扫描网格点数"),
        'verify': ('flag', False, True, "用弦台球复核闭合"),
    },
    'caustics': {
        'b': ('vector', True, None, "b_1,...,b_d"),
        'point': ('vector', True, None, "直线上一点"),
        'dir': ('vector', True, None, "直线方向"),
    },
    'elliptic': {
        'b': ('vector', True, None, "b_1,...,b_d"),
        'point': ('vector', False, None, "笛卡尔坐标"),
        'lam': ('vector', False, None, "椭圆坐标 λ_1,...,λ_d"),
    },
    'simulate': {
        'b': ('vector', True, None, "b_1,...,b_d"),
        'c': ('number', True, None, "边界参数 c"),
        'start': ('vector', True, None, "起点"),
        'dir': ('vector', True, None, "起始方向"),
        'bounces': ('int', True, None, "碰撞次数"),
        'metric': ('choice:chord,hyperbolic,hierarchy', False, 'chord', "轨迹模型"),
        'k': ('int', False, 0, "hierarchy 度量的层级指标"),
        'potential': ('str', False, None, "势，如 V1 或 W1_2"),
        'tol': ('number', False, 1e-10, "积分容限"),
    },
    'compare-models': {
        'b': ('vector', True, None, "b_1,...,b_d"),
        'c': ('number', True, None, "边界参数 c"),
        'start': ('vector', False, None, "起点；不给时随机抽取"),
        'dir': ('vector', False, None, "起始方向；不给时随机抽取"),
        'bounces': ('int', False, 10, "碰撞次数"),
        'samples': ('int', False, 1, "随机初始条件个数"),
        'tol': ('number', False, 1e-9, "积分容限"),
    },
    'hierarchy-check': {
        'd': ('int', True, None, "维数 2..4"),
        'k': ('int', True, None, "层级指标"),
        'samples': ('int', False, 1000, "括号与反射检验样本数"),
        'flow_samples': ('int', False, 4, "测地线积分样本数"),
    },
    'potential': {
        'basis': ('str', False, None, "基元素，如 V3 或 W2_1"),
        'b': ('vector', False, (3, 2, 1), "b_1,...,b_d"),
        'laurent': ('str', False, None, "Laurent 多项式文件"),
    },
    'archive': {
        'action': ('choice:check,list,show,delete,store', True, None, "归档操作"),
        'id': ('int', False, None, "报告编号"),
        'report': ('str', False, None, "要归档的报告文件"),
    },
}

COMMANDS = tuple(PARAMETERS)

# 下限约束
_MINIMUM = {('cayley', 'n'): 1, ('scan-periods', 'n'): 2, ('simulate', 'bounces'): 1,
            ('compare-models', 'bounces'): 1, ('compare-models', 'samples'): 1,
            ('hierarchy-check', 'd'): 2, ('hierarchy-check', 'samples'): 1}


@dataclass(frozen=True)
class Scenario:
    """
    一次运行的全部输入

    Args:
        command: 命令名
        params (dict): 已解析的参数
        output: 输出目录
        fmt: report 或 table
        seed: 随机种子（None 表示取配置默认值）
        mode: exact 或 float
        archive (bool): 输出后是否归档
        log_level: 日志级别
    """

    command: str
    params: dict = field(default_factory=dict)
    output: str = None
    fmt: str = 'report'
    seed: int = None
    mode: str = 'exact'
    archive: bool = False
    log_level: str = None


class _Parser(argparse.ArgumentParser):
    """出错时抛出 BadParameter 而不是退出进程"""

    def error(self, message):
        raise BadParameter('argv', message)


def _flag_name(key):
    return '--' + key.replace('_', '-')


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument('--config', help="JSON 场景文件")
    common.add_argument('--output', help="输出目录")
    common.add_argument('--format', dest='fmt', choices=REPORT_FORMATS)
    common.add_argument('--seed', type=int)
    common.add_argument('--log-level')
    common.add_argument('--archive', action='store_true', default=None, help="输出后写入归档数据库")

    parser = _Parser(prog='billiards', description="椭圆台球周期性与可积层级的计算工具")
    sub = parser.add_subparsers(dest='command')
    for command, schema in PARAMETERS.items():
        p = sub.add_parser(command, parents=[common])
        for key, (kind, _, _, help_text) in schema.items():
            if kind == 'flag':
                p.add_argument(_flag_name(key), dest=key, action=argparse.BooleanOptionalAction, default=None,
                               help=help_text)
            else:
                p.add_argument(_flag_name(key), dest=key, default=None, help=help_text)
    return parser


def _convert(command, key, kind, raw):
    """把命令行字符串或 JSON 值转换成参数值"""
    try:
        if kind == 'vector':
            if isinstance(raw, str):
                value = parse_vector(raw)
            elif isinstance(raw, (list, tuple)):
                value = tuple(read_number(v) for v in raw)
            else:
                raise ValueError
            if not value and raw not in ((), []):
                raise ValueError
            return value
        if kind == 'number':
            return parse_number(raw) if isinstance(raw, str) else read_number(raw)
        if kind == 'int':
            value = int(raw) if isinstance(raw, str) else raw
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError
            minimum = _MINIMUM.get((command, key))
            if minimum is not None and value < minimum:
                raise BadParameter(key, f"{key} must be ≥ {minimum}")
            return value
        if kind == 'flag':
            return bool(raw)
        if kind.startswith('choice:'):
            options = kind.split(':', 1)[1].split(',')
            if raw not in options:
                raise BadParameter(key, "只能是 " + ' / '.join(options))
            return raw
        return str(raw)
    except (ValueError, TypeError, ZeroDivisionError):
        raise BadParameter(key, PARAMETERS[command][key][3])


def load_document(path):
    """
    读取 JSON 场景文件

    Raises:
        ReportIoError: 文件无法读取
        BadParameter: 不是合法的场景文档
    """
    try:
        with open(path, encoding='utf-8') as handle:
            document = json.load(handle)
    except OSError as e:
        raise ReportIoError(f"无法读取场景文件 {path}: {e}")
    except json.JSONDecodeError as e:
        raise BadParameter('config', f"JSON 格式错误: {e}")
    if not isinstance(document, dict):
        raise BadParameter('config', "场景文件必须是 JSON 对象")
    return document


# 只影响数值方法、不参与几何输入的参数
_CONTROL_KEYS = {'tol', 'samples', 'flow_samples', 'free_index', 'bounces', 'id'}


def _numeric_values(params):
    for key, value in params.items():
        if key in _CONTROL_KEYS:
            continue
        if isinstance(value, tuple):
            yield from value
        elif not isinstance(value, (str, bool)) and value is not None:
            yield value


def parse_scenario(argv=None, document=None):
    """
    解析命令行与场景文档

    Args:
        argv (list): 命令行参数（不含程序名）
        document (dict): 场景文档，{command, params, output, format, seed}

    Returns:
        Scenario: 校验过的场景

    Raises:
        UnknownCommand: 命令不存在
        BadParameter: 参数缺失或格式错误，带键名
    """
    argv = list(argv or [])
    if argv and not argv[0].startswith('-') and argv[0] not in COMMANDS:
        raise UnknownCommand(f"未知命令 '{argv[0]}'，可用命令: {', '.join(COMMANDS)}")
    args = build_parser().parse_args(argv) if argv else argparse.Namespace(command=None, config=None)

    if document is None and getattr(args, 'config', None):
        document = load_document(args.config)
    document = document or {}
    command = args.command or document.get('command')
    if command is None:
        raise UnknownCommand("没有给出命令")
    if command not in PARAMETERS:
        raise UnknownCommand(f"未知命令 '{command}'")
    if args.command and document.get('command') not in (None, command):
        raise BadParameter('command', f"场景文件的命令 {document['command']} 与命令行 {command} 不一致")

    schema = PARAMETERS[command]
    doc_params = document.get('params', {})
    unknown = [key for key in doc_params if key not in schema]
    if unknown:
        raise BadParameter(unknown[0], f"{command} 不接受此参数")

    # 先校验给出的参数，再报告缺失的必需参数
    params = {}
    missing = []
    for key, (kind, required, default, _) in schema.items():
        raw = getattr(args, key, None)
        if raw is None:
            raw = doc_params.get(key)
        if raw is not None:
            params[key] = _convert(command, key, kind, raw)
        elif required:
            missing.append(key)
        else:
            params[key] = default
    if missing:
        raise BadParameter(missing[0], f"缺少必需参数 {_flag_name(missing[0])}")

    def pick(name, fallback):
        value = getattr(args, name, None)
        return value if value is not None else document.get(name, fallback)

    fmt = pick('fmt', document.get('format', 'report'))
    if fmt not in REPORT_FORMATS:
        raise BadParameter('format', "只能是 report 或 table")
    seed = pick('seed', None)
    if seed is not None and not isinstance(seed, int):
        raise BadParameter('seed', "整数")
    scenario = Scenario(
        command=command,
        params=params,
        output=pick('output', None) or output_dir(),
        fmt=fmt,
        seed=seed,
        mode=arithmetic_mode(_numeric_values(params)),
        archive=bool(pick('archive', False)),
        log_level=pick('log_level', None),
    )
    _logger.debug("场景: %s", scenario)
    return scenario
