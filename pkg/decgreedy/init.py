from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import List

from ._metadata import __version__
from .cli import GEN_KINDS, Command, RunConfig, run
from .core import Direction, GraphKind, OutputFormat, Settings
from .utils import check_versions


def _setup_logging(level: int) -> None:
    logging.basicConfig(format='{asctime}: {levelname}: {message}', style='{', level=level, force=True)
    logging.Formatter.default_msec_format = '%s.%03d'
    if sys.stdout.isatty():
        logging.addLevelName(
            logging.DEBUG, "\033[0;32m%s\033[0m" % logging.getLevelName(logging.DEBUG)
        )
        logging.addLevelName(
            logging.INFO, "\033[1;33m%s\033[0m" % logging.getLevelName(logging.INFO)
        )
        logging.addLevelName(
            logging.WARNING, "\033[1;35m%s\033[1;0m" % logging.getLevelName(logging.WARNING)
        )
        logging.addLevelName(
            logging.ERROR, "\033[1;41m%s\033[1;0m" % logging.getLevelName(logging.ERROR)
        )


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='decgreedy', description='Bottleneck subsets, polygons, polyhedra, cycles and curves')
    parser.add_argument(
        '--version', '-v', action='version', version=f'%(prog)s {__version__}'
    )

    common = ArgumentParser(add_help=False)
    common.add_argument(
        '--output', '-o', type=Path, help='result file (stdout by default); figure path for svg and obj'
    )
    common.add_argument(
        '--format', '-f', type=OutputFormat, choices=list(OutputFormat), default=OutputFormat.JSON,
        help='result format'
    )
    common.add_argument(
        '--oracle', action='store_true', help='cross-check the result by exhaustive search and report agreement'
    )
    common.add_argument(
        '--degrees', action='store_true', help='show planar angles in degrees (text format only)'
    )
    common.add_argument(
        '--config', type=Path, help='YAML settings file (default: ./decgreedy.yml when present)'
    )
    common.add_argument(
        '--log-level', type=str.upper, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='overrides the log level from the settings'
    )

    sub = parser.add_subparsers(dest='command', required=True, metavar='command')

    polygon = sub.add_parser(str(Command.POLYGON2D), parents=[common], help='max-min-angle convex polygon')
    polygon.add_argument('input', type=Path, help='2-column point file')
    polygon.add_argument(
        '--include-straight', action='store_true', help='list straight boundary points on the polygon'
    )
    polygon.add_argument('--engine', choices=['pocket', 'chain'], default='pocket', help='2D hull engine')

    polyhedron = sub.add_parser(str(Command.POLYHEDRON3D), parents=[common], help='max-min-solid-angle polyhedron')
    polyhedron.add_argument('input', type=Path, help='3-column point file')

    curve = sub.add_parser(str(Command.CURVE3D), parents=[common], help='max-min-angle closed curve in 3D')
    curve.add_argument('input', type=Path, help='3-column point file')
    curve.add_argument(
        '--allow-repeated-segments', action='store_true', help='let the curve run along a segment more than once'
    )
    curve.add_argument(
        '--max-curve-points', type=int, metavar='N',
        help='refuse inputs with more than N distinct points (default: max_curve_points from the settings)'
    )

    degen = sub.add_parser(str(Command.DEGENERACY), parents=[common], help='graph degeneracy and its maximal core')
    degen.add_argument('input', type=Path, help='undirected graph file')

    cycle = sub.add_parser(str(Command.CYCLE), parents=[common], help='bottleneck cycle')
    cycle.add_argument('input', type=Path, help='graph file')
    cycle.add_argument(
        '--kind', type=GraphKind, choices=list(GraphKind), help='expected graph kind (default: the file header)'
    )
    cycle.add_argument(
        '--objective', type=Direction, choices=list(Direction), default=Direction.MAXMIN,
        help='maximise the lightest edge (maxmin) or minimise the heaviest (minmax)'
    )

    gen = sub.add_parser(str(Command.GEN), parents=[common], help='random instances and batch verification')
    gen.add_argument('kind', choices=GEN_KINDS, help='instance kind')
    gen.add_argument('instance', type=Path, nargs='?', help='where to write the instance')
    gen.add_argument('-n', type=int, default=8, help='points or vertices')
    gen.add_argument('-m', type=int, default=12, help='edges, for graphs')
    gen.add_argument('--seed', type=int, default=0, help='random seed (first seed of a batch)')
    gen.add_argument(
        '--batch', type=int, default=0, metavar='COUNT',
        help='verify COUNT seeded instances against the oracles instead of writing one'
    )

    return parser


def make_config(args: Namespace, settings: Settings) -> RunConfig:
    return RunConfig(
        command=Command(args.command),
        input=getattr(args, 'input', None),
        output=args.output,
        format=args.format,
        direction=getattr(args, 'objective', Direction.MAXMIN),
        kind=getattr(args, 'kind', None) if args.command == Command.CYCLE else None,
        allow_repeated_segments=getattr(args, 'allow_repeated_segments', False),
        include_straight=getattr(args, 'include_straight', False),
        degrees=args.degrees,
        oracle=args.oracle,
        engine=getattr(args, 'engine', 'pocket'),
        seed=getattr(args, 'seed', 0),
        gen_kind=getattr(args, 'kind', 'points2d') if args.command == Command.GEN else 'points2d',
        size=getattr(args, 'n', 8),
        edges=getattr(args, 'm', 12),
        batch=getattr(args, 'batch', 0),
        instance_path=getattr(args, 'instance', None),
        settings=settings,
    )


def main(argv: List[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    _setup_logging(logging.INFO)
    settings = Settings.load(args.config)
    if args.log_level is not None:
        settings.log_level = args.log_level
    if getattr(args, 'max_curve_points', None) is not None:
        settings.max_curve_points = args.max_curve_points
    logging.getLogger().setLevel(settings.log_level_number)

    check_versions()

    return run(make_config(args, settings))
