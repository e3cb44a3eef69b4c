# -*- coding: utf-8 -*-
"""
共焦几何：共焦族、椭圆坐标、直线焦散、双曲度量与 Minkowski 模型映射
"""

from billiards.confocal.family import (
    ConfocalFamily,
    BoundaryQuadric,
    EllipticCoords,
    CausticSet,
    geometry_document,
    read_geometry_document,
)
from billiards.confocal.elliptic import to_elliptic, from_elliptic, check_interlacing, squares_from_elliptic
from billiards.confocal.caustics import (
    caustic_polynomial,
    line_caustics,
    tangent_direction,
    random_tangent_launch,
    generatrix_directions,
)
from billiards.confocal.metric import hyperbolic_metric_at, hyperbolic_metric_derivative
from billiards.confocal.minkowski import (
    MinkowskiEllipsoid,
    KleinImage,
    minkowski_to_klein,
    verify_confocality_symbolic,
    minkowski_point_to_klein,
)
