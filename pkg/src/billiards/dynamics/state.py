# -*- coding: utf-8 -*-
"""
相空间状态与台球轨迹

    PhasePoint  - (x, p)
    Bounce      - 边界碰撞点与入射、出射动量
    Trajectory  - 碰撞序列、每段焦散参数、度量标记与能量
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class PhasePoint:
    """
    相空间中的点

    Args:
        x: 位形
        p: 动量（余向量）
    """

    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'x', np.asarray(self.x, dtype=float))
        object.__setattr__(self, 'p', np.asarray(self.p, dtype=float))

    @property
    def d(self):
        return len(self.x)

    def with_p(self, p):
        return PhasePoint(self.x, p)


@dataclass(frozen=True)
class Bounce:
    point: np.ndarray
    p_in: np.ndarray
    p_out: np.ndarray

    @property
    def unit_out(self):
        return self.p_out / np.linalg.norm(self.p_out)


@dataclass
class Trajectory:
    """
    台球轨迹

    Args:
        start: 初始状态
        bounces: 按时间排列的 Bounce
        segments: 每段弦的焦散参数（弦台球才有）
        metric_tag: 生成轨迹所用的度量
        energy: 初始能量
        start_on_boundary: 起点是否位于 Γ 上
        energy_samples: 每次碰撞时的能量（势场轨迹）
    """

    start: PhasePoint
    bounces: list = field(default_factory=list)
    segments: list = field(default_factory=list)
    metric_tag: str = 'euclidean'
    energy: float = 0.0
    start_on_boundary: bool = False
    energy_samples: list = field(default_factory=list)

    def __len__(self):
        return len(self.bounces)

    def points(self):
        return np.array([b.point for b in self.bounces])

    def states(self):
        """
        闭合检测使用的 (位置, 单位出射方向) 序列

        起点在 Γ 上时起点本身作为第 0 个状态，否则从第一次碰撞开始计数。
        """
        states = []
        if self.start_on_boundary:
            p = self.start.p
            states.append((self.start.x, p / np.linalg.norm(p)))
        states.extend((b.point, b.unit_out) for b in self.bounces)
        return states

    def energy_drift(self):
        if not self.energy_samples:
            return 0.0
        return float(max(abs(e - self.energy) for e in self.energy_samples))

    def caustic_drift(self):
        """首段与末段焦散参数的最大偏差"""
        if len(self.segments) < 2:
            return 0.0
        first = np.asarray(self.segments[0], dtype=float)
        return float(max(np.max(np.abs(np.asarray(s, dtype=float) - first)) for s in self.segments))

    def table_header(self):
        d = self.start.d
        header = ['index']
        header += [f'x{i + 1}' for i in range(d)]
        header += [f'u{i + 1}' for i in range(d)]
        header += [f't{i + 1}' for i in range(d - 1)]
        return header

    def table_rows(self):
        rows = []
        for index, bounce in enumerate(self.bounces):
            row = [index]
            row += [float(v) for v in bounce.point]
            row += [float(v) for v in bounce.unit_out]
            # 第 index 次碰撞之后的那段弦
            if index + 1 < len(self.segments):
                row += [float(v) for v in self.segments[index + 1]]
            else:
                row += [''] * (self.start.d - 1)
            rows.append(row)
        return rows

    def bounce_table(self):
        """
        逗号分隔的碰撞表：序号、坐标、单位出射动量、焦散参数

        Returns:
            str: 含表头的 CSV 文本
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.table_header())
        for row in self.table_rows():
            writer.writerow([f'{v:.17g}' if isinstance(v, float) else v for v in row])
        return buffer.getvalue()

    def summary(self):
        return {
            'bounces': len(self.bounces),
            'metric': self.metric_tag,
            'energy': float(self.energy),
            'caustic_drift': self.caustic_drift(),
            'energy_drift': self.energy_drift(),
        }
