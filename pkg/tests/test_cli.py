from __future__ import annotations

import importlib
import json
import logging
import math

import numpy as np
import pytest

from conftest import CUBE, SQUARE
from decgreedy import main
from decgreedy.cli import (
    POLYGON_GID, Command, RunConfig, as_simple_graph, parse_graph, parse_points, random_graph, run, write_graph,
    write_points
)
from decgreedy.core import CycleResult, Direction, GraphKind, InvalidInputError, OutputFormat, ParseError, Settings
from decgreedy.graphs import MixedGraph, PolarGraph, WeightedDigraph, WeightedMultigraph

run_module = importlib.import_module('decgreedy.cli.run')

K4 = 'undirected 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n'


@pytest.fixture(autouse=True)
def restore_logging():
    # main() installs its own stderr handler on the root logger
    root = logging.getLogger()
    level = root.level
    yield
    for handler in root.handlers[:]:
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)
    root.setLevel(level)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return path


def run_main(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestParsePoints:
    def test_comments_and_blank_lines(self, tmp_path):
        path = write(tmp_path, 'p.txt', '# square\n0 0\n1 0  # corner\n\n1 1\n0 1\n')
        assert parse_points(path).tolist() == SQUARE.tolist()

    def test_three_columns(self, tmp_path):
        assert parse_points(write(tmp_path, 'p.txt', '0 0 0\n1 2 3\n'), 3).shape == (2, 3)

    def test_ragged(self, tmp_path):
        with pytest.raises(ParseError, match='line 3'):
            parse_points(write(tmp_path, 'p.txt', '0 0\n1 0\n1 1 1\n'))

    def test_wrong_dimension(self, tmp_path):
        with pytest.raises(ParseError, match='line 1'):
            parse_points(write(tmp_path, 'p.txt', '0 0\n'), 3)

    def test_not_a_number(self, tmp_path):
        with pytest.raises(ParseError, match="line 2: expected a number, got 'x'"):
            parse_points(write(tmp_path, 'p.txt', '0 0\nx 1\n'))

    def test_non_finite(self, tmp_path):
        with pytest.raises(ParseError):
            parse_points(write(tmp_path, 'p.txt', '0 inf\n'))

    def test_empty(self, tmp_path):
        with pytest.raises(ParseError, match='holds no points'):
            parse_points(write(tmp_path, 'p.txt', '# nothing\n'))

    def test_missing(self, tmp_path):
        with pytest.raises(ParseError):
            parse_points(tmp_path / 'absent.txt')


class TestParseGraph:
    def test_undirected_default_weight(self, tmp_path):
        g = parse_graph(write(tmp_path, 'g.txt', K4))
        assert isinstance(g, WeightedMultigraph)
        assert g.m == 6
        assert (g.weights == 1).all()

    def test_directed(self, tmp_path):
        g = parse_graph(write(tmp_path, 'g.txt', 'directed 3 3\n0 1 5\n1 2 7\n2 0 9.5\n'))
        assert isinstance(g, WeightedDigraph)
        assert g.edges() == [(0, 1, 5.0), (1, 2, 7.0), (2, 0, 9.5)]

    def test_mixed(self, tmp_path):
        g = parse_graph(write(tmp_path, 'g.txt', 'mixed 3 2\n0 1 -- 3\n1 2 -> 4\n'))
        assert isinstance(g, MixedGraph)
        assert g.edges() == [(0, 1, 3.0, False), (1, 2, 4.0, True)]

    def test_polar(self, tmp_path):
        g = parse_graph(write(tmp_path, 'g.txt', 'polar 2 1\n0 0 1 1 2.5\n'))
        assert isinstance(g, PolarGraph)
        assert g.edges() == [(0, 0, 1, 1, 2.5)]

    @pytest.mark.parametrize('text, line', [
        ('', 1),
        ('forest 3 2\n', 1),
        ('directed 3 2\n0 1 1\n', 2),
        ('directed 3 1\n0 1 1\n1 2 1\n', 3),
        ('directed 3 1\n0 3 1\n', 2),
        ('polar 2 1\n0 2 1 0 1\n', 2),
        ('mixed 2 1\n0 1 => 1\n', 2),
    ])
    def test_errors(self, tmp_path, text, line):
        with pytest.raises(ParseError) as e:
            parse_graph(write(tmp_path, 'g.txt', text))
        assert e.value.line == line

    def test_undirected_loop_in_mixed_graph(self, tmp_path):
        with pytest.raises(ParseError, match='self-loop'):
            parse_graph(write(tmp_path, 'g.txt', 'mixed 1 1\n0 0 -- 1\n'))

    @pytest.mark.parametrize('kind', list(GraphKind))
    def test_written_graphs_read_back(self, tmp_path, rng, kind):
        g = random_graph(rng, kind, 6, 10)
        path = tmp_path / 'g.txt'
        write_graph(path, g)
        assert parse_graph(path).edges() == g.edges()

    def test_written_points_read_back(self, tmp_path, rng):
        pts = rng.random((7, 3))
        path = tmp_path / 'p.txt'
        write_points(path, pts)
        assert (parse_points(path) == pts).all()

    def test_simple_graph(self, tmp_path):
        assert as_simple_graph(parse_graph(write(tmp_path, 'g.txt', K4))).m == 6
        with pytest.raises(ParseError):
            as_simple_graph(parse_graph(write(tmp_path, 'd.txt', 'directed 2 1\n0 1\n')))
        with pytest.raises(ParseError):
            as_simple_graph(parse_graph(write(tmp_path, 'm.txt', 'undirected 2 2\n0 1\n1 0\n')))


class TestRunConfig:
    def test_figure_formats(self, tmp_path):
        with pytest.raises(InvalidInputError):
            RunConfig(Command.DEGENERACY, tmp_path, tmp_path / 'x.svg', OutputFormat.SVG).validate()
        with pytest.raises(InvalidInputError):
            RunConfig(Command.POLYGON2D, tmp_path, None, OutputFormat.SVG).validate()

    def test_degrees_need_text(self, tmp_path):
        with pytest.raises(InvalidInputError):
            RunConfig(Command.POLYGON2D, tmp_path, degrees=True).validate()

    def test_gen(self, tmp_path):
        RunConfig(Command.GEN, gen_kind='mixed', instance_path=tmp_path / 'g.txt').validate()
        RunConfig(Command.GEN, gen_kind='points3d', batch=3).validate()
        with pytest.raises(InvalidInputError):
            RunConfig(Command.GEN, gen_kind='mesh', instance_path=tmp_path / 'g.txt').validate()
        with pytest.raises(InvalidInputError):
            RunConfig(Command.GEN, gen_kind='points2d').validate()


class TestMain:
    def test_polygon2d_json(self, tmp_path, capsys):
        path = tmp_path / 'square.txt'
        write_points(path, SQUARE)
        code, out, _ = run_main(capsys, 'polygon2d', path)
        report = json.loads(out)

        assert code == 0
        assert report['objective'] == 'maxmin-angle-polygon'
        assert report['value'] == pytest.approx(math.pi / 2)
        assert report['witness'] == [0, 1, 2, 3]
        assert set(report) == {'objective', 'value', 'elements', 'witness', 'mode', 'diagnostics'}

    def test_polygon2d_text_in_degrees(self, tmp_path, capsys):
        path = tmp_path / 'square.txt'
        write_points(path, SQUARE)
        code, out, _ = run_main(capsys, 'polygon2d', path, '-f', 'text', '--degrees')
        assert code == 0
        value = next(line for line in out.splitlines() if line.startswith('value:'))
        assert float(value.split()[1]) == pytest.approx(90)
        assert value.endswith(' deg')

    def test_polygon2d_svg(self, tmp_path, capsys):
        points, figure = tmp_path / 'p.txt', tmp_path / 'polygon.svg'
        write_points(points, np.vstack([SQUARE, [[0.5, 0.5]]]))
        code, out, _ = run_main(capsys, 'polygon2d', points, '-f', 'svg', '-o', figure)

        assert code == 0
        assert json.loads(out)['elements'] == [0, 1, 2, 3, 4]
        svg = figure.read_text(encoding='utf-8')
        assert f'id="{POLYGON_GID}"' in svg
        assert 'id="points"' in svg

    def test_polyhedron3d_obj(self, tmp_path, capsys):
        points, figure = tmp_path / 'cube.txt', tmp_path / 'cube.obj'
        write_points(points, CUBE)
        code, _, _ = run_main(capsys, 'polyhedron3d', points, '-f', 'obj', '-o', figure)

        assert code == 0
        lines = figure.read_text(encoding='utf-8').splitlines()
        assert sum(line.startswith('v ') for line in lines) == 8
        assert sum(line.startswith('f ') for line in lines) == 12

    def test_degeneracy(self, tmp_path, capsys):
        code, out, _ = run_main(capsys, 'degeneracy', write(tmp_path, 'k4.txt', K4), '--oracle')
        report = json.loads(out)
        assert code == 0
        assert report['value'] == 3
        assert report['elements'] == [0, 1, 2, 3]
        assert report['diagnostics']['oracle']['agreement'] is True

    def test_cycle_to_file(self, tmp_path, capsys):
        graph = write(tmp_path, 'g.txt', 'directed 3 3\n0 1 5\n1 2 7\n2 0 9\n')
        result = tmp_path / 'out.json'
        code, out, _ = run_main(capsys, 'cycle', graph, '--objective', 'minmax', '-o', result)

        assert code == 0
        assert out == ''
        report = json.loads(result.read_text(encoding='utf-8'))
        assert report['value'] == 9
        assert report['mode'] == 'minmax'
        assert report['objective'] == 'bottleneck-cycle-directed'

    def test_polar_cycle_reports_poles(self, tmp_path, capsys):
        graph = write(tmp_path, 'g.txt', 'polar 3 3\n0 1 1 0 3\n1 1 2 0 1\n2 1 0 0 2\n')
        code, out, _ = run_main(capsys, 'cycle', graph, '--oracle')
        report = json.loads(out)
        assert code == 0
        assert report['value'] == 1
        assert report['witness']['poles'] == [[0, 1]] * 3
        assert report['diagnostics']['bridges'] == 0

    def test_gen_writes_instance(self, tmp_path, capsys):
        path = tmp_path / 'g.txt'
        code, out, _ = run_main(capsys, 'gen', 'mixed', path, '-n', '5', '-m', '9', '--seed', '3')
        assert code == 0
        assert json.loads(out)['objective'] == 'generate'
        g = parse_graph(path)
        assert isinstance(g, MixedGraph)
        assert (g.n, g.m) == (5, 9)

    def test_gen_is_seeded(self, tmp_path, capsys):
        first, second = tmp_path / 'a.txt', tmp_path / 'b.txt'
        run_main(capsys, 'gen', 'points3d', first, '-n', '6', '--seed', '11')
        run_main(capsys, 'gen', 'points3d', second, '-n', '6', '--seed', '11')
        assert first.read_text(encoding='utf-8') == second.read_text(encoding='utf-8')

    @pytest.mark.parametrize('argv, code', [
        (['polygon2d', 'absent.txt'], 2),
        (['cycle', 'dag.txt'], 3),
        (['cycle', 'dag.txt', '--kind', 'undirected'], 1),
        (['degeneracy', 'dag.txt', '-f', 'svg', '-o', 'x.svg'], 1),
        (['polygon2d', 'line.txt'], 3),
    ])
    def test_exit_codes(self, tmp_path, capsys, monkeypatch, argv, code):
        monkeypatch.chdir(tmp_path)
        write(tmp_path, 'dag.txt', 'directed 3 2\n0 1 1\n1 2 1\n')
        write(tmp_path, 'line.txt', '0 0\n1 1\n2 2\n')
        assert run_main(capsys, *argv)[0] == code

    def test_settings_file(self, tmp_path, capsys):
        config = write(tmp_path, 'settings.yml', 'cycle_budget: 2\n')
        graph = write(tmp_path, 'g.txt', 'directed 3 3\n0 1 5\n1 2 7\n2 0 9\n')
        code, _, err = run_main(capsys, 'cycle', graph, '--oracle', '--config', config)
        assert code == 1
        assert 'exceeds the budget of 2' in err

    def test_max_curve_points(self, tmp_path, capsys, rng):
        path = tmp_path / 'p.txt'
        write_points(path, rng.random((6, 3)))

        code, _, err = run_main(capsys, 'curve3d', path, '--max-curve-points', '5')
        assert code == 1
        assert 'exceed the limit of 5' in err

        code, out, _ = run_main(capsys, 'curve3d', path, '--max-curve-points', '6')
        assert code == 0
        assert json.loads(out)['objective'] == 'maxmin-angle-closed-curve'


class TestRun:
    def test_curve_oracle_agreement_is_logged(self, tmp_path, rng, caplog):
        caplog.set_level(logging.INFO)
        path = tmp_path / 'p.txt'
        write_points(path, rng.random((5, 3)))

        assert run(RunConfig(Command.CURVE3D, path, oracle=True, output=tmp_path / 'out.json')) == 0
        assert 'agreement: true' in caplog.text

    def test_disagreement_exits_with_4(self, tmp_path, caplog, monkeypatch):
        def wrong(g, direction=Direction.MAXMIN, budget=None):
            return CycleResult(-1.0, [0], [0], direction)

        monkeypatch.setattr(run_module, 'cycle_enumeration_oracle', wrong)
        path = write(tmp_path, 'g.txt', 'directed 3 3\n0 1 5\n1 2 7\n2 0 9\n')
        config = RunConfig(Command.CYCLE, path, output=tmp_path / 'out.json', oracle=True)

        assert run(config) == 4
        assert 'agreement: false' in caplog.text
        report = json.loads((tmp_path / 'out.json').read_text(encoding='utf-8'))
        assert report['diagnostics']['oracle']['agreement'] is False

    def test_infeasible_with_oracle(self, tmp_path, caplog):
        caplog.set_level(logging.INFO)
        path = write(tmp_path, 'g.txt', 'undirected 3 2\n0 1 1\n1 2 1\n')
        assert run(RunConfig(Command.CYCLE, path, oracle=True)) == 3
        assert 'agreement: true' in caplog.text

    def test_batch(self, capsys):
        settings = Settings(batch_workers=1)
        config = RunConfig(Command.GEN, gen_kind='directed', size=6, edges=10, batch=3, seed=5, settings=settings)
        assert run(config) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['objective'] == 'batch-verification'
        assert report['value'] == 3
        assert report['elements'] == []
