from __future__ import annotations

import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..core import (
    BudgetExceededError, CurveMode, DecGreedyError, GraphKind, InfeasibleError, InvalidInputError, NoCycle, NoCurve,
    OutputFormat
)
from ..degeneracy import DegreeInstance, SimpleGraph, degeneracy
from ..geometry import (
    AngleInstance, SolidAngleInstance, maxmin_angle_closed_curve, maxmin_angle_polygon, maxmin_solid_angle_polyhedron
)
from ..graphs import (
    bottleneck_cycle_directed, bottleneck_cycle_mixed, bottleneck_cycle_undirected, bottleneck_regular_cycle
)
from ..oracles import (
    OracleBudget, bottleneck_subset_oracle, curve_enumeration_oracle, cycle_enumeration_oracle, gift_wrap_hull
)
from ..utils import get_usable_cpus_count
from .config import Command, RunConfig
from .formats import AnyGraph, as_simple_graph, graph_kind, parse_graph, parse_points, write_graph, write_points
from .generate import POINT_KINDS, random_graph, random_points
from .render import render_polygon_svg, write_obj

__all__ = [
    'Report', 'run',
    'solve_polygon2d', 'solve_polyhedron3d', 'solve_curve3d', 'solve_degeneracy', 'solve_cycle'
]


AGREEMENT_TOLERANCE = 1e-9


@dataclass
class Report:
    """The result document every command emits, one schema for all of them."""

    objective: str
    value: float | int | None
    elements: List[int] = field(default_factory=list)
    witness: Any = None
    mode: str | None = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    # planar angles that --degrees may convert in text output
    angular: bool = False

    @property
    def agreement(self) -> bool | None:
        oracle = self.diagnostics.get('oracle')
        return None if oracle is None else bool(oracle['agreement'])

    def as_dict(self) -> Dict[str, Any]:
        return {
            'objective': self.objective,
            'value': self.value,
            'elements': self.elements,
            'witness': self.witness,
            'mode': self.mode,
            'diagnostics': self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, default=_json_default)

    def to_text(self, degrees: bool = False) -> str:
        value = self.value
        if degrees and self.angular and isinstance(value, float):
            value = math.degrees(value)

        lines = [
            f'objective: {self.objective}',
            f'value: {value}{" deg" if degrees and self.angular else ""}',
            f'elements: {" ".join(map(str, self.elements))}',
            f'witness: {json.dumps(self.witness, default=_json_default)}',
        ]
        if self.mode is not None:
            lines.append(f'mode: {self.mode}')
        if self.agreement is not None:
            lines.append(f'agreement: {str(self.agreement).lower()}')
        return '\n'.join(lines) + '\n'


def _json_default(o: Any) -> Any:
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (np.ndarray, frozenset, set)):
        return sorted(o.tolist()) if isinstance(o, np.ndarray) else sorted(o)
    raise TypeError(f'{type(o).__name__} is not JSON serializable')


def _budget(config: RunConfig) -> OracleBudget:
    return OracleBudget.from_settings(config.settings)


def _close(a: float | None, b: float | None) -> bool:
    if a is None or b is None:
        return a is b
    return abs(a - b) <= AGREEMENT_TOLERANCE


def solve_polygon2d(points: np.ndarray, config: RunConfig) -> Tuple[Report, Any]:
    s = config.settings
    result = maxmin_angle_polygon(points, config.engine, s.tie_tolerance, s.hull_tolerance)
    witness = result.boundary_polygon() if config.include_straight else result.polygon

    report = Report(
        'maxmin-angle-polygon', result.theta, sorted(result.bottleneck_subset), witness, angular=True,
        diagnostics={'mapping': result.mapping, 'straight': result.straight, 'removals': len(result.trace.removals)}
    )

    if config.oracle:
        instance = AngleInstance(result.points, s.hull_tolerance)
        q, subset = bottleneck_subset_oracle(instance, _budget(config), s.tie_tolerance)
        hull = gift_wrap_hull(result.points, sorted(subset))
        agree = _close(float(q), result.theta) and subset == result.bottleneck_subset
        agree = agree and set(hull) == set(result.polygon)
        report.diagnostics['oracle'] = {'value': float(q), 'elements': sorted(subset), 'agreement': agree}

    return report, result


def solve_polyhedron3d(points: np.ndarray, config: RunConfig) -> Tuple[Report, Any]:
    s = config.settings
    result = maxmin_solid_angle_polyhedron(points, s.tie_tolerance, s.hull_tolerance)

    report = Report(
        'maxmin-solid-angle-polyhedron', result.theta, sorted(result.bottleneck_subset),
        {'vertices': result.vertices, 'facets': [list(f) for f in result.facets]},
        diagnostics={'mapping': result.mapping, 'removals': len(result.trace.removals)}
    )

    if config.oracle:
        instance = SolidAngleInstance(result.points, s.hull_tolerance)
        q, subset = bottleneck_subset_oracle(instance, _budget(config), s.tie_tolerance)
        agree = _close(float(q), result.theta) and subset == result.bottleneck_subset
        report.diagnostics['oracle'] = {'value': float(q), 'elements': sorted(subset), 'agreement': agree}

    return report, result


def solve_curve3d(points: np.ndarray, config: RunConfig) -> Tuple[Report, Any]:
    s = config.settings
    mode = CurveMode.REPEATED_SEGMENTS if config.allow_repeated_segments else CurveMode.REPEATED_POINTS

    oracle = None
    if config.oracle:
        oracle = curve_enumeration_oracle(points, mode, _budget(config))

    try:
        result = maxmin_angle_closed_curve(
            points, config.allow_repeated_segments, s.max_curve_points, s.regular_path_warn_vertices
        )
    except NoCurve:
        if config.oracle:
            _log_agreement(oracle is None)
        raise

    report = Report(
        'maxmin-angle-closed-curve', result.theta, sorted(set(result.curve)), result.curve, str(mode), angular=True,
        diagnostics={'angles': result.angles, 'mapping': result.mapping}
    )

    if config.oracle:
        value = None if oracle is None else oracle.theta
        report.diagnostics['oracle'] = {
            'value': value, 'curve': None if oracle is None else oracle.curve, 'agreement': _close(value, result.theta)
        }

    return report, result


def solve_degeneracy(g: SimpleGraph, config: RunConfig) -> Tuple[Report, Any]:
    instance = DegreeInstance(g) if config.oracle else None
    result = degeneracy(g)

    report = Report(
        'degeneracy', result.d, sorted(result.core), result.ordering,
        diagnostics={'core_numbers': result.core_numbers, 'operations': result.operations}
    )

    if instance is not None:
        q, subset = bottleneck_subset_oracle(instance, _budget(config))
        agree = int(float(q)) == result.d and subset == result.core
        report.diagnostics['oracle'] = {'value': int(float(q)), 'elements': sorted(subset), 'agreement': agree}

    return report, result


_CYCLE_SOLVERS: Dict[GraphKind, Callable[..., Any]] = {
    GraphKind.UNDIRECTED: bottleneck_cycle_undirected,
    GraphKind.DIRECTED: bottleneck_cycle_directed,
    GraphKind.MIXED: bottleneck_cycle_mixed,
}


def solve_cycle(g: AnyGraph, config: RunConfig) -> Tuple[Report, Any]:
    kind = graph_kind(g)
    if config.kind is not None and config.kind is not kind:
        raise InvalidInputError(f'--kind {config.kind} given, but the file holds a {kind} graph')

    oracle = cycle_enumeration_oracle(g, config.direction, _budget(config)) if config.oracle else None

    try:
        if kind is GraphKind.POLAR:
            result = bottleneck_regular_cycle(g, config.direction, config.settings.regular_path_warn_vertices)
        else:
            result = _CYCLE_SOLVERS[kind](g, config.direction)
    except NoCycle:
        if config.oracle:
            _log_agreement(oracle is None)
        raise

    witness: Dict[str, Any] = {'vertices': result.vertices}
    if result.poles is not None:
        witness['poles'] = [list(p) for p in result.poles]

    diagnostics = dict(result.diagnostics)
    # reduction logs are in expanded-graph ids, report their sizes only
    for key in ('bridges', 'removals'):
        if key in diagnostics:
            diagnostics[key] = len(diagnostics[key])

    report = Report(
        f'bottleneck-cycle-{kind}', result.value, result.edges, witness, str(config.direction), diagnostics=diagnostics
    )

    if config.oracle:
        value = None if oracle is None else oracle.value
        report.diagnostics['oracle'] = {
            'value': value, 'edges': None if oracle is None else oracle.edges, 'agreement': _close(value, result.value)
        }

    return report, result


def _log_agreement(agree: bool) -> None:
    (logging.info if agree else logging.error)(f'agreement: {str(agree).lower()}')


def _emit(config: RunConfig, report: Report) -> None:
    text = report.to_text(config.degrees) if config.format is OutputFormat.TEXT else report.to_json() + '\n'

    if config.output is None or config.format in (OutputFormat.SVG, OutputFormat.OBJ):
        sys.stdout.write(text)
        return

    with open(config.output, 'w', encoding='utf-8') as f:
        f.write(text)


def _solve(config: RunConfig) -> Report:
    assert config.input is not None

    if config.command is Command.POLYGON2D:
        report, result = solve_polygon2d(parse_points(config.input, 2), config)
        if config.format is OutputFormat.SVG:
            assert config.output is not None
            polygon = result.boundary_polygon() if config.include_straight else result.polygon
            render_polygon_svg(config.output, result.points, polygon, f'theta = {math.degrees(result.theta):.4f} deg')
        return report

    if config.command is Command.POLYHEDRON3D:
        report, result = solve_polyhedron3d(parse_points(config.input, 3), config)
        if config.format is OutputFormat.OBJ:
            assert config.output is not None
            write_obj(config.output, result.points, result.facets)
        return report

    if config.command is Command.CURVE3D:
        return solve_curve3d(parse_points(config.input, 3), config)[0]

    if config.command is Command.DEGENERACY:
        return solve_degeneracy(as_simple_graph(parse_graph(config.input)), config)[0]

    return solve_cycle(parse_graph(config.input), config)[0]


def _verify_one(config: RunConfig, seed: int) -> Dict[str, Any]:
    """Generate one seeded instance and cross-check every applicable solver on it."""
    rng = np.random.default_rng(seed)
    checks: Dict[str, bool | None] = {}
    kind = config.gen_kind

    def check(name: str, solve: Callable[[], Tuple[Report, Any]]) -> None:
        try:
            checks[name] = solve()[0].agreement
        except InfeasibleError:
            checks[name] = None
        except BudgetExceededError as e:
            logging.warning(f'seed {seed}: {name} skipped: {e}')
            checks[name] = None
        except DecGreedyError as e:
            logging.error(f'seed {seed}: {name}: {e}')
            checks[name] = False

    probe = replace(config, oracle=True, format=OutputFormat.JSON, output=None)

    if kind in POINT_KINDS:
        points = random_points(rng, config.size, POINT_KINDS[kind])
        if kind == 'points2d':
            check('polygon2d', lambda: solve_polygon2d(points, probe))
        else:
            check('polyhedron3d', lambda: solve_polyhedron3d(points, probe))
            for repeated in (False, True):
                name = f'curve3d-{"segments" if repeated else "points"}'
                check(name, partial(solve_curve3d, points, replace(probe, allow_repeated_segments=repeated)))
    else:
        g = random_graph(rng, GraphKind(kind), config.size, config.edges)
        check('cycle', lambda: solve_cycle(g, replace(probe, kind=None)))

    # a solver without a result agrees when its oracle has none either; that case is logged
    return {'seed': seed, 'checks': checks, 'agreement': all(v is not False for v in checks.values())}


def _batch(config: RunConfig) -> Report:
    workers = config.settings.batch_workers or get_usable_cpus_count()
    seeds = list(range(config.seed, config.seed + config.batch))

    logging.info(f'gen: verifying {len(seeds)} {config.gen_kind} instances with {workers} workers')

    with ProcessPoolExecutor(max_workers=workers) as executor:
        outcomes = list(executor.map(_verify_one, [config] * len(seeds), seeds))

    failed = [o['seed'] for o in outcomes if not o['agreement']]

    return Report(
        'batch-verification', len(seeds) - len(failed), failed, None, config.gen_kind,
        diagnostics={
            'instances': len(seeds), 'workers': workers, 'outcomes': outcomes, 'oracle': {'agreement': not failed}
        }
    )


def _generate(config: RunConfig) -> Report:
    assert config.instance_path is not None
    rng = np.random.default_rng(config.seed)

    if config.gen_kind in POINT_KINDS:
        write_points(config.instance_path, random_points(rng, config.size, POINT_KINDS[config.gen_kind]))
        size: Dict[str, Any] = {'n': config.size}
    else:
        g = random_graph(rng, GraphKind(config.gen_kind), config.size, config.edges)
        write_graph(config.instance_path, g)
        size = {'n': g.n, 'm': g.m}

    return Report(
        'generate', config.size, [], str(config.instance_path), config.gen_kind,
        diagnostics={'seed': config.seed, **size}
    )


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        config.validate()

        if config.command is Command.GEN:
            report = _batch(config) if config.batch else _generate(config)
        else:
            report = _solve(config)
    except DecGreedyError as e:
        logging.error(f'{config.command}: {e}')
        return e.exit_code

    _emit(config, report)

    if report.agreement is not None:
        _log_agreement(report.agreement)
        if not report.agreement:
            return 4

    return 0

