# -*- coding: utf-8 -*-
"""
命令行前端：场景解析、命令分发与报告输出
"""

from billiards.cli.scenario import Scenario, parse_scenario, COMMANDS
from billiards.cli.report import Report, emit_report
from billiards.cli.commands import execute
