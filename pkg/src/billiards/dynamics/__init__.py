# -*- coding: utf-8 -*-
"""
台球动力学：反射律、弦台球、测地流、势场运动与闭合检测
"""

from billiards.dynamics.state import PhasePoint, Bounce, Trajectory
from billiards.dynamics.reflection import reflect, reflect_elliptic, transversality
from billiards.dynamics.chords import trace_chords, chord_parameter
from billiards.dynamics.flow import (
    PathSamples,
    hamiltonian,
    geodesic_flow,
    trace_with_potential,
    maupertuis_comparison,
    compare_models,
    distance_to_line,
)
from billiards.dynamics.closure import (
    closure_residual,
    closure_check,
    caustic_closure_residual,
    search_periodic_orbits,
    OrbitCandidate,
)
