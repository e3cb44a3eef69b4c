#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口

    python -m billiards.cli.main cayley --a 4,2,1 --mu 3/2 --n 3
    python -m billiards.cli.main scan-periods --a 4,2,1 --n 3 --bracket 0,1 --format table
    python -m billiards.cli.main potential --basis V3

出错时打印中文说明与 JSON 错误块，并以异常对应的退出码退出。
"""

import json
import logging
import sys

from billiards.cli.commands import execute, archive_report
from billiards.cli.report import emit_report
from billiards.cli.scenario import parse_scenario
from billiards.config import log_level
from billiards.errors import BilliardsError


def _print_result(report, paths):
    print(f"命令: {report.command}  (算术: {report.mode})")
    if report.seed is not None:
        print(f"随机种子: {report.seed}")
    for path in paths:
        print(f"已写出: {path}")


def main(argv=None):
    """
    解析、执行、输出

    Returns:
        int: 进程退出码
    """
    argv = sys.argv[1:] if argv is None else argv
    print("=" * 50)
    print("椭圆台球计算工具")
    print("=" * 50)
    try:
        scenario = parse_scenario(argv)
        logging.basicConfig(
            level=(scenario.log_level or log_level()).upper(),
            format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        )
        report = execute(scenario)
        paths = emit_report(report, scenario.output, scenario.fmt)
        _print_result(report, paths)
        if scenario.archive:
            report_id = archive_report(report)
            print(f"已归档: report_id = {report_id}")
        return 0
    except BilliardsError as e:
        print(f"错误: {e}")
        print(json.dumps(e.to_dict(), ensure_ascii=False, sort_keys=True))
        return e.exit_code
    except KeyboardInterrupt:
        print("\n\n运行已取消")
        return 1
    except Exception as e:
        print(f"发生未知错误: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
