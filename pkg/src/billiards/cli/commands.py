# -*- coding: utf-8 -*-
"""
命令分发

每个命令对应一个 run_* 函数，参数为 (params, seed)，返回 (结果, 表格, 实际使用的种子)。
"""

import csv
import io
import json
import logging

import numpy as np

from billiards.archive import (
    connect_to_database,
    check_connection,
    ensure_schema,
    store_report,
    fetch_report,
    list_reports,
    delete_report,
)
from billiards.cayley.criterion import cayley_condition
from billiards.cayley.indicator import period_indicator, find_periodic_caustic
from billiards.cli.report import Report
from billiards.config import default_seed
from billiards.confocal.caustics import line_caustics
from billiards.confocal.elliptic import to_elliptic, from_elliptic, squares_from_elliptic
from billiards.confocal.family import ConfocalFamily, BoundaryQuadric
from billiards.confocal.minkowski import MinkowskiEllipsoid
from billiards.dynamics.chords import trace_chords
from billiards.dynamics.closure import caustic_closure_residual
from billiards.dynamics.flow import trace_with_potential, compare_models
from billiards.dynamics.state import PhasePoint
from billiards.errors import BadParameter, NoRootInBracket, UnknownCommand, ReportIoError
from billiards.hierarchy.integrals import integral_I
from billiards.hierarchy.metrics import HierarchyMetric, hyperbolic_metric
from billiards.hierarchy.report import hierarchy_report, default_boundary, random_interior_state
from billiards.hierarchy.tensors import HierarchyContext, closed_form_report
from billiards.potentials.basis import (
    BasisSpec,
    V_KIND,
    CATALOG_MAX_K,
    basis_potential,
    catalog_potential,
    generating_potential,
)
from billiards.potentials.companion import solve_f
from billiards.potentials.elliptic_form import elliptic_form
from billiards.potentials.laurent import LaurentPolynomial
from billiards.potentials.separability import separability_residual, recurrence_check, residual_document

_logger = logging.getLogger(__name__)


def _csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([f'{v:.17g}' if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def _floats(values):
    return np.array([float(v) for v in values], dtype=float)


# ---- Cayley 判据 ----

def run_cayley(params, seed):
    E = MinkowskiEllipsoid(params['a'], params['mu'])
    verdict = cayley_condition(E, params['n'], route=params['route'])
    return {'ellipsoid': E.to_dict(), 'verdict': verdict.to_dict()}, None, None


def default_brackets(a):
    """椭圆焦散 (0, a_d) 与双曲焦散 (a_d, a_{d−1})"""
    d = len(a) - 1
    return [(0, a[d]), (a[d], a[d - 1])]


def run_scan_periods(params, seed):
    seed = default_seed() if seed is None else seed
    a, n = params['a'], params['n']
    if params['bracket'] is not None:
        if len(params['bracket']) != 2:
            raise BadParameter('bracket', "lo,hi")
        brackets = [tuple(params['bracket'])]
    else:
        brackets = default_brackets(a)

    found = []
    for bracket in brackets:
        try:
            roots = find_periodic_caustic(
                a, n, bracket, mu_fixed=params['mu_fixed'], free_index=params['free_index'],
                samples=params['samples'], verify=params['verify'], seed=seed,
            )
        except NoRootInBracket:
            _logger.info("区间 (%s, %s) 中没有 %d 周期焦散", bracket[0], bracket[1], n)
            continue
        found.extend((bracket, mu) for mu in roots)
    if not found:
        raise NoRootInBracket(f"在 {brackets} 中没有找到 {n} 周期焦散")

    rows = []
    for bracket, mu in sorted(found, key=lambda item: item[1]):
        mu_values = list(params['mu_fixed'])
        mu_values.insert(params['free_index'], mu)
        E = MinkowskiEllipsoid(a, tuple(mu_values))
        rows.append({
            'bracket': [bracket[0], bracket[1]],
            'mu': mu,
            'indicator': period_indicator(E, n),
            'closure_residual': caustic_closure_residual(E, n, seed=seed),
        })
    table = _csv(['mu', 'indicator', 'closure_residual'],
                 [[r['mu'], r['indicator'], r['closure_residual']] for r in rows])
    return {'n': n, 'a': list(a), 'roots': rows}, table, seed


# ---- 共焦几何 ----

def run_caustics(params, seed):
    family = ConfocalFamily(params['b'])
    for key in ('point', 'dir'):
        if len(params[key]) != family.d:
            raise BadParameter(key, f"需要 {family.d} 个分量")
    caustics = line_caustics(family, params['point'], params['dir'])
    return {
        'family': family.to_dict(),
        'caustics': list(caustics.params),
        'degenerate': list(caustics.degenerate_flags),
        'polynomial': list(caustics.polynomial),
    }, None, None


def run_elliptic(params, seed):
    family = ConfocalFamily(params['b'])
    if params['point'] is not None:
        coords = to_elliptic(family, params['point'])
        return {'family': family.to_dict(), 'lambda': list(coords.lam), 'degenerate': coords.degenerate}, None, None
    if params['lam'] is not None:
        x = from_elliptic(family, params['lam'])
        return {
            'family': family.to_dict(),
            'point': x,
            'squares': squares_from_elliptic(family, params['lam']),
        }, None, None
    raise BadParameter('point', "需要 --point 或 --lam")


# ---- 动力学 ----

def _metric_for(params, family):
    if params['metric'] == 'hyperbolic':
        return hyperbolic_metric(family)
    if params['metric'] == 'hierarchy':
        return HierarchyMetric(HierarchyContext(family, params['k']))
    return None


def _integral_drift(family, k, V, traj):
    """I_i^k = J_i^k + 2 f_i 在每次碰撞后的最大相对漂移"""
    ctx = HierarchyContext(family, k)
    states = [traj.start] + [PhasePoint(b.point, b.p_out) for b in traj.bounces]
    worst = 0.0
    for i in range(family.d):
        f = solve_f(ctx, V, i)
        values = [integral_I(ctx, s, i, f) for s in states]
        worst = max(worst, max(abs(v - values[0]) for v in values) / max(1.0, abs(values[0])))
    return worst


def run_simulate(params, seed):
    family = ConfocalFamily(params['b'])
    boundary = BoundaryQuadric(family, params['c'])
    x0 = _floats(params['start'])
    v0 = _floats(params['dir'])
    V = None
    if params['potential']:
        V = basis_potential(BasisSpec.parse(params['potential']), family)

    if params['metric'] == 'chord' and V is None:
        traj = trace_chords(boundary, x0, v0, params['bounces'])
    else:
        metric = _metric_for(params, family)
        p0 = v0 if metric is None else metric.matrix(x0) @ v0
        traj = trace_with_potential(boundary, metric, V, PhasePoint(x0, p0), params['bounces'], float(params['tol']))

    result = {'boundary': boundary.to_dict(), 'summary': traj.summary()}
    if V is not None:
        result['potential'] = V.to_lines()
        if params['metric'] != 'hyperbolic':
            k = params['k'] if params['metric'] == 'hierarchy' else 0
            result['integral_drift'] = _integral_drift(family, k, V, traj)
    return result, traj.bounce_table(), None


def _random_launch(boundary, rng):
    axes = np.sqrt(boundary.axes_squared())
    u = rng.normal(size=boundary.d)
    x0 = boundary.project(axes * u / np.linalg.norm(u))
    v = rng.normal(size=boundary.d)
    n = boundary.normal(x0)
    if v @ n > 0:
        v = v - 2.0 * (v @ n) / (n @ n) * n
    return x0, v / np.linalg.norm(v)


def run_compare_models(params, seed):
    family = ConfocalFamily(params['b'])
    boundary = BoundaryQuadric(family, params['c'])
    tol = float(params['tol'])
    if params['start'] is not None and params['dir'] is not None:
        launches = [(_floats(params['start']), _floats(params['dir']))]
    else:
        seed = default_seed() if seed is None else seed
        rng = np.random.default_rng(seed)
        launches = [_random_launch(boundary, rng) for _ in range(params['samples'])]

    rows = []
    for index, (x0, v0) in enumerate(launches):
        outcome = compare_models(boundary, x0, v0, params['bounces'], tol)
        rows.append({'index': index, 'start': x0, 'dir': v0, 'max_distance': outcome['max_distance']})
    worst = max(r['max_distance'] for r in rows)
    table = _csv(['index', 'max_distance'], [[r['index'], r['max_distance']] for r in rows])
    return {'boundary': boundary.to_dict(), 'tol': tol, 'runs': rows, 'max_distance': worst}, table, seed


# ---- 度量层级 ----

def run_hierarchy_check(params, seed):
    d, k = params['d'], params['k']
    if d not in (2, 3, 4):
        raise BadParameter('d', "内置边界只有 d = 2, 3, 4")
    seed = default_seed() if seed is None else seed
    summary = hierarchy_report(d, k, seed=seed, samples=params['samples'], flow_samples=params['flow_samples'])
    boundary = default_boundary(d)
    ctx = HierarchyContext(boundary.family, k)
    x = random_interior_state(boundary, np.random.default_rng(seed)).x
    summary['closed_form'] = closed_form_report(ctx, x)
    keys = ('involution', 'conservation', 'reflection', 'independence')
    table = _csv(['quantity', 'value'], [[key, float(summary[key])] for key in keys])
    return summary, table, seed


# ---- 可分离势 ----

def _residual_status(V, family):
    residual = separability_residual(V, family)
    return 'zero (exact)' if all(r.is_zero() for r in residual.values()) else 'nonzero'


def run_potential(params, seed):
    family = ConfocalFamily(params['b'])
    if params['laurent']:
        try:
            with open(params['laurent'], encoding='utf-8') as handle:
                V = LaurentPolynomial.load(handle.read(), family.d)
        except OSError as e:
            raise ReportIoError(f"无法读取 {params['laurent']}: {e}")
        ok, violation = recurrence_check(V, family)
        return {
            'family': family.to_dict(),
            'lines': V.to_lines(),
            'rendered': V.render(),
            'residual': _residual_status(V, family),
            'residuals': residual_document(V, family),
            'recurrence': {'holds': ok, 'violation': violation.to_dict() if violation else None},
        }, None, None

    if not params['basis']:
        raise BadParameter('basis', "需要 --basis 或 --laurent")
    spec = BasisSpec.parse(params['basis'])
    V = basis_potential(spec, family)
    ok, _ = recurrence_check(V, family)
    result = {
        'family': family.to_dict(),
        'basis': spec.label,
        'lines': V.to_lines(),
        'rendered': V.render(),
        'residual': _residual_status(V, family),
        'recurrence': {'holds': ok, 'violation': None},
        'elliptic_form': elliptic_form(spec, family).to_dict(),
    }
    if spec.k <= CATALOG_MAX_K:
        result['catalog_match'] = V == catalog_potential(spec, family)
    if spec.kind == V_KIND:
        result['generating_match'] = V == generating_potential(spec.k, family)
    return result, None, None


# ---- 归档 ----

def run_archive(params, seed):
    action = params['action']
    if action == 'check':
        return {'action': action, 'status': check_connection()}, None, None
    if action in ('show', 'delete') and params['id'] is None:
        raise BadParameter('id', f"{action} 需要 --id")
    if action == 'store' and not params['report']:
        raise BadParameter('report', "store 需要 --report")

    with connect_to_database() as connection:
        ensure_schema(connection)
        if action == 'list':
            rows = [
                {'report_id': r[0], 'command': r[1], 'seed': r[2], 'created': r[3].isoformat()}
                for r in list_reports(connection)
            ]
            return {'action': action, 'reports': rows}, None, None
        if action == 'show':
            return {'action': action, 'id': params['id'], 'report': fetch_report(connection, params['id'])}, None, None
        if action == 'delete':
            return {'action': action, 'id': params['id'], 'deleted': delete_report(connection, params['id'])}, None, None
        try:
            with open(params['report'], encoding='utf-8') as handle:
                document = json.load(handle)
        except (OSError, json.JSONDecodeError) as e:
            raise ReportIoError(f"无法读取报告 {params['report']}: {e}")
        return {'action': action, 'id': store_report(connection, document)}, None, None


COMMAND_HANDLERS = {
    'cayley': run_cayley,
    'scan-periods': run_scan_periods,
    'caustics': run_caustics,
    'elliptic': run_elliptic,
    'simulate': run_simulate,
    'compare-models': run_compare_models,
    'hierarchy-check': run_hierarchy_check,
    'potential': run_potential,
    'archive': run_archive,
}


def execute(scenario):
    """
    执行场景

    Args:
        scenario (Scenario): parse_scenario 的结果

    Returns:
        Report: 结果、可选表格与实际使用的种子

    Raises:
        UnknownCommand: 命令没有对应的处理函数
        BilliardsError: 各模块抛出的错误原样传播
    """
    handler = COMMAND_HANDLERS.get(scenario.command)
    if handler is None:
        raise UnknownCommand(f"未知命令 '{scenario.command}'")
    _logger.info("执行 %s (%s)", scenario.command, scenario.mode)
    result, table, seed = handler(scenario.params, scenario.seed)
    if seed is not None:
        _logger.info("随机种子: %d", seed)
    return Report(scenario.command, scenario.mode, seed, result, table)


def archive_report(report):
    """把报告文档写入归档数据库，返回 report_id"""
    with connect_to_database() as connection:
        ensure_schema(connection)
        return store_report(connection, report.document())
