# -*- coding: utf-8 -*-
"""
测地等价度量层级：张量 L 与 S_i、度量 g_k / ḡ_k、积分 J_i^k

检验报告见 billiards.hierarchy.report（依赖 dynamics，不在此处导入）。
"""

from billiards.hierarchy.tensors import HierarchyContext, STensorSet, char_tensors, closed_form_report
from billiards.hierarchy.metrics import (
    EUCLIDEAN_BRANCH,
    HYPERBOLIC_BRANCH,
    metric_at,
    EuclideanMetric,
    HierarchyMetric,
    hyperbolic_metric,
    maupertuis_scale,
)
from billiards.hierarchy.integrals import (
    JIntegral,
    CoordinateFunction,
    integral_J,
    integral_I,
    poisson_bracket,
    poisson_bracket_fd,
)
