from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import SQUARE, TETRAHEDRON, random_similarity
from decgreedy.core import CurveMode, InvalidInputError, NoCurve
from decgreedy.geometry import (
    angle_at, build_polar_graph, chain_middles, curve_angles, maxmin_angle_closed_curve, maxmin_angle_polygon,
    segment_id, segment_points
)
from decgreedy.oracles import curve_enumeration_oracle, turn_angles

SQUARE_3D = np.hstack([SQUARE, np.zeros((4, 1))])


class TestAngles:
    def test_right_angle(self):
        assert angle_at((1, 0, 0), (0, 0, 0), (0, 0, 1)) == pytest.approx(math.pi / 2)

    def test_collinear(self):
        assert angle_at((0, 0, 0), (1, 0, 0), (2, 0, 0)) == pytest.approx(math.pi)
        assert angle_at((2, 0, 0), (1, 0, 0), (3, 0, 0)) == pytest.approx(0)

    def test_coincident(self):
        with pytest.raises(InvalidInputError):
            angle_at((0, 0, 0), (0, 0, 0), (1, 0, 0))

    def test_turn_angle_table(self, rng):
        pts = rng.random((5, 3))
        table = turn_angles(pts)
        assert table[0, 1, 2] == pytest.approx(angle_at(pts[0], pts[1], pts[2]))
        assert table[3, 4, 0] == pytest.approx(angle_at(pts[3], pts[4], pts[0]))


class TestChainGraph:
    def test_segment_numbering(self):
        rows = segment_points(5).tolist()
        assert len(rows) == 10
        for s, (i, j) in enumerate(rows):
            assert segment_id(i, j, 5) == s

    @pytest.mark.parametrize('n, vertices, edges', [(3, 3, 3), (4, 6, 12), (5, 10, 30)])
    def test_counts(self, rng, n, vertices, edges):
        g = build_polar_graph(rng.random((n, 3)))
        assert g.n == vertices
        assert g.m == edges

    def test_both_ends_share_the_middle_point(self, rng):
        g = build_polar_graph(rng.random((6, 3)))
        rows = segment_points(6)
        assert (rows[g.eu, g.epu] == rows[g.ev, g.epv]).all()
        assert (chain_middles(g, 6) == rows[g.ev, g.epv]).all()

    def test_weights_are_turn_angles(self, rng):
        pts = rng.random((5, 3))
        g = build_polar_graph(pts)
        rows = segment_points(5)
        middles = chain_middles(g, 5)
        for e in range(g.m):
            b = middles[e]
            a = rows[g.eu[e], 1 - g.epu[e]]
            c = rows[g.ev[e], 1 - g.epv[e]]
            assert g.weights[e] == pytest.approx(angle_at(pts[a], pts[b], pts[c]))

    def test_limits(self, rng):
        with pytest.raises(InvalidInputError):
            build_polar_graph(rng.random((2, 3)))
        with pytest.raises(InvalidInputError):
            build_polar_graph(rng.random((10, 3)), max_points=9)

    def test_duplicates_are_dropped(self, rng, caplog):
        pts = rng.random((5, 3))
        g = build_polar_graph(np.vstack([pts, pts[:2]]))
        assert g.n == 10
        assert g.m == 30
        assert 'duplicate' in caplog.text

    def test_duplicates_do_not_count_against_the_limit(self, rng):
        pts = rng.random((4, 3))
        assert build_polar_graph(np.vstack([pts, pts]), max_points=4).n == 6


class TestClosedCurve:
    @pytest.mark.parametrize('allow_repeated_segments', [False, True])
    def test_square(self, allow_repeated_segments):
        result = maxmin_angle_closed_curve(SQUARE_3D, allow_repeated_segments)
        assert result.theta == pytest.approx(math.pi / 2)
        assert min(result.angles) == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize('allow_repeated_segments', [False, True])
    def test_tetrahedron(self, allow_repeated_segments):
        result = maxmin_angle_closed_curve(TETRAHEDRON, allow_repeated_segments)
        assert result.theta == pytest.approx(math.pi / 3)

    def test_mode_is_reported(self):
        assert maxmin_angle_closed_curve(TETRAHEDRON).mode is CurveMode.REPEATED_POINTS
        assert maxmin_angle_closed_curve(TETRAHEDRON, True).mode is CurveMode.REPEATED_SEGMENTS

    def test_too_few_points(self):
        with pytest.raises(NoCurve):
            maxmin_angle_closed_curve([[0, 0, 0], [1, 0, 0], [0, 0, 0]])

    def test_collinear_points(self):
        result = maxmin_angle_closed_curve([[0, 0, 0], [1, 0, 0], [2, 0, 0]])
        assert result.theta == pytest.approx(0)
        assert sorted(result.curve) == [0, 1, 2]

    def test_curve_angles(self, rng):
        pts = rng.random((7, 3))
        result = maxmin_angle_closed_curve(pts)
        assert curve_angles(pts, result.curve) == pytest.approx(result.angles)
        assert min(result.angles) == pytest.approx(result.theta, abs=1e-9)

    def test_no_segment_repeats(self, rng):
        for _ in range(20):
            result = maxmin_angle_closed_curve(rng.random((int(rng.integers(3, 9)), 3)))
            k = len(result.curve)
            segments = [frozenset((result.curve[i], result.curve[(i + 1) % k])) for i in range(k)]
            assert len(set(segments)) == k

    def test_matches_oracle(self, rng):
        for _ in range(100):
            pts = rng.random((int(rng.integers(3, 7)), 3))
            for allow, mode in ((False, CurveMode.REPEATED_POINTS), (True, CurveMode.REPEATED_SEGMENTS)):
                expected = curve_enumeration_oracle(pts, mode)
                result = maxmin_angle_closed_curve(pts, allow)
                assert result.theta == pytest.approx(expected.theta, abs=1e-12)

    def test_repeated_segments_never_worse(self, rng):
        for _ in range(20):
            pts = rng.random((int(rng.integers(3, 9)), 3))
            strict = maxmin_angle_closed_curve(pts).theta
            assert maxmin_angle_closed_curve(pts, True).theta >= strict - 1e-12

    def test_theta_invariant_under_relabeling_and_similarity(self, rng):
        for _ in range(20):
            pts = rng.random((int(rng.integers(3, 8)), 3))
            for allow in (False, True):
                theta = maxmin_angle_closed_curve(pts, allow).theta
                permuted = maxmin_angle_closed_curve(pts[rng.permutation(len(pts))], allow)
                moved = maxmin_angle_closed_curve(random_similarity(rng, pts), allow)
                assert permuted.theta == pytest.approx(theta, abs=1e-9)
                assert moved.theta == pytest.approx(theta, abs=1e-9)

    def test_coplanar_points_do_at_least_as_well_as_the_convex_polygon(self, rng):
        for _ in range(50):
            flat = rng.random((int(rng.integers(3, 9)), 2))
            polygon = maxmin_angle_polygon(flat).theta
            pts = random_similarity(rng, np.hstack([flat, np.zeros((len(flat), 1))]))
            for allow in (False, True):
                assert maxmin_angle_closed_curve(pts, allow).theta >= polygon - 1e-9

    @pytest.mark.slow
    def test_smoke(self, rng):
        result = maxmin_angle_closed_curve(rng.random((60, 3)))
        assert math.pi / 2 < result.theta <= math.pi
