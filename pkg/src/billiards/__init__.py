# -*- coding: utf-8 -*-
"""
椭圆台球周期性判据与测地等价度量层级的计算库

子包:
    confocal    - 共焦二次曲面族、椭圆坐标、焦散线、Beltrami-Klein 模型
    cayley      - Cayley 型秩判据（精确有理数运算）
    dynamics    - 弦台球、测地流、势场运动与闭合检测
    hierarchy   - 张量 L、S_i、度量层级 g_k 与积分 J_i^k
    potentials  - Laurent 多项式可分离势
    cli         - 命令行入口
    archive     - 报告归档 (PostgreSQL, 可选)
"""

__version__ = "1.0.0"

REPORT_SCHEMA = "billiards-report/1"
