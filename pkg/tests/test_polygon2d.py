from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import SQUARE, SQUARE_CENTER, random_similarity
from decgreedy.core import NoPolygon, Quality
from decgreedy.geometry import (
    AngleInstance, ChainRebuildEngine, Hull2, PocketRepairEngine, boundary_points_2d, convex_hull_2d, interior_angle,
    maxmin_angle_polygon, point_quality_2d, polygon_min_angle
)
from decgreedy.greedy import decremental_greedy, known_beta
from decgreedy.oracles import bottleneck_subset_oracle, gift_wrap_hull


def rotated_to_start(ring, start):
    i = ring.index(start)
    return ring[i:] + ring[:i]


def state(points, alive=None):
    pts = np.asarray(points, dtype=np.float64)
    mask = np.ones(len(pts), dtype=bool) if alive is None else np.asarray(alive)
    idx = np.flatnonzero(mask)
    return Hull2(pts, mask, idx[convex_hull_2d(pts[idx])].tolist())


class TestHull2:
    def test_square(self):
        assert convex_hull_2d(SQUARE) == [0, 1, 2, 3]

    def test_square_center(self):
        assert convex_hull_2d(SQUARE_CENTER) == [0, 1, 2, 3]

    def test_collinear_points_are_not_vertices(self):
        pts = np.array([[0, 0], [1, 0], [2, 0], [2, 2], [0, 2]], dtype=float)
        assert convex_hull_2d(pts) == [0, 2, 3, 4]

    def test_matches_gift_wrap(self, rng):
        for _ in range(200):
            n = int(rng.integers(3, 51))
            pts = rng.random((n, 2))
            hull = convex_hull_2d(pts)
            assert rotated_to_start(hull, hull[0]) == rotated_to_start(gift_wrap_hull(pts), hull[0])

    def test_strictly_convex_ccw(self, rng):
        pts = rng.random((40, 2))
        ring = pts[convex_hull_2d(pts)]
        d1 = np.roll(ring, -1, axis=0) - ring
        d2 = np.roll(ring, -2, axis=0) - np.roll(ring, -1, axis=0)
        assert (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0] > 0).all()

    @pytest.mark.parametrize('engine', [ChainRebuildEngine, PocketRepairEngine])
    def test_engines_track_hull_under_deletions(self, rng, engine):
        pts = rng.random((60, 2))
        hull = engine(pts)
        alive = np.ones(60, dtype=bool)

        for v in rng.permutation(60)[:55].tolist():
            hull.delete(v)
            alive[v] = False
            expected = state(pts, alive).hull
            got = hull.snapshot().hull
            if len(expected) >= 3:
                assert got == expected

    def test_angles(self):
        square = state(SQUARE)
        assert all(interior_angle(square, i) == pytest.approx(math.pi / 2, abs=1e-12) for i in range(4))

        triangle = state([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])
        assert interior_angle(triangle, 0) == pytest.approx(math.pi / 3, abs=1e-12)

    def test_angle_sum(self, rng):
        pts = rng.random((30, 2))
        hull = state(pts)
        k = len(hull.hull)
        assert sum(interior_angle(hull, i) for i in range(k)) == pytest.approx((k - 2) * math.pi, abs=1e-9)


class TestPointQuality:
    def test_square_center(self):
        s = state(SQUARE_CENTER)
        assert point_quality_2d(4, s) == 2 * math.pi
        assert float(point_quality_2d(0, s)) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_edge_midpoint(self):
        s = state(np.vstack([SQUARE, [[0.5, 0.0]]]))
        assert point_quality_2d(4, s) == math.pi
        assert boundary_points_2d(s.points, s.hull, [4]) == [4]

    def test_collinear_set(self):
        s = state([[0, 0], [1, 1], [2, 2]])
        assert point_quality_2d(1, s) == Quality.neg_inf()


class TestMaxminAnglePolygon:
    def test_square(self):
        result = maxmin_angle_polygon(SQUARE)
        assert result.theta == pytest.approx(math.pi / 2, abs=1e-12)
        assert result.polygon == [0, 1, 2, 3]

    def test_square_center(self):
        result = maxmin_angle_polygon(SQUARE_CENTER)
        assert result.theta == pytest.approx(math.pi / 2, abs=1e-12)
        assert result.polygon == [0, 1, 2, 3]
        assert result.bottleneck_subset == {0, 1, 2, 3, 4}

    def test_straight_points(self):
        pts = np.vstack([SQUARE, [[0.5, 0.0]]])
        result = maxmin_angle_polygon(pts)
        assert result.polygon == [0, 1, 2, 3]
        assert result.straight == [4]
        assert result.boundary_polygon() == [0, 4, 1, 2, 3]

    def test_duplicates(self, caplog):
        result = maxmin_angle_polygon(np.vstack([SQUARE, SQUARE[:2]]))
        assert result.mapping == [0, 1, 2, 3]
        assert 'duplicate' in caplog.text

    @pytest.mark.parametrize('points', [
        [[0, 0], [1, 1]],
        [[0, 0], [1, 1], [2, 2], [3, 3]],
    ])
    def test_no_polygon(self, points):
        with pytest.raises(NoPolygon):
            maxmin_angle_polygon(points)

    def test_matches_subset_oracle(self, rng):
        for _ in range(300):
            n = int(rng.integers(3, 11))
            pts = rng.random((n, 2))
            result = maxmin_angle_polygon(pts)
            q, subset = bottleneck_subset_oracle(AngleInstance(pts), tolerance=1e-12)

            assert result.theta == pytest.approx(float(q), abs=1e-9)
            assert result.bottleneck_subset == subset
            assert polygon_min_angle(pts, result.polygon) == pytest.approx(result.theta, abs=1e-9)
            assert set(result.polygon) == set(gift_wrap_hull(pts, sorted(subset)))

    def test_engines_agree(self, rng):
        for _ in range(50):
            pts = rng.random((int(rng.integers(3, 40)), 2))
            chain = maxmin_angle_polygon(pts, 'chain')
            pocket = maxmin_angle_polygon(pts, 'pocket')
            assert chain.theta == pocket.theta
            assert chain.bottleneck_subset == pocket.bottleneck_subset

    def test_generic_greedy_and_known_beta_agree(self, rng):
        for _ in range(30):
            pts = rng.random((int(rng.integers(3, 9)), 2))
            result = maxmin_angle_polygon(pts)
            theta, subset, _ = decremental_greedy(AngleInstance(pts))
            assert float(theta) == pytest.approx(result.theta, abs=1e-12)
            assert subset == result.bottleneck_subset
            assert known_beta(AngleInstance(pts), theta).subset == result.bottleneck_subset

    def test_theta_invariant_under_relabeling_and_similarity(self, rng):
        for _ in range(30):
            pts = rng.random((int(rng.integers(3, 30)), 2))
            result = maxmin_angle_polygon(pts)

            perm = rng.permutation(len(pts))
            permuted = maxmin_angle_polygon(pts[perm])
            assert permuted.theta == pytest.approx(result.theta, abs=1e-9)
            assert {int(perm[i]) for i in permuted.bottleneck_subset} == result.bottleneck_subset

            moved = maxmin_angle_polygon(random_similarity(rng, pts))
            assert moved.theta == pytest.approx(result.theta, abs=1e-9)

    def test_trace_never_removes_above_the_current_bottleneck(self, rng):
        for _ in range(30):
            pts = rng.random((int(rng.integers(3, 15)), 2))
            result = maxmin_angle_polygon(pts)
            instance = AngleInstance(result.points)

            for v, q in result.trace.removals:
                qualities = instance.qualities()
                assert float(q) <= float(min(qualities.values())) + 1e-9
                assert float(qualities[v]) == pytest.approx(float(q), abs=1e-9)
                assert float(q) <= result.theta + 1e-12
                instance.remove(v)

    def test_integer_grid_ties(self):
        # lattice points tie on right angles and straight boundary points
        pts = np.array([[x, y] for x in range(3) for y in range(3)], dtype=float)
        result = maxmin_angle_polygon(pts)
        q, subset = bottleneck_subset_oracle(AngleInstance(pts), tolerance=1e-12)
        assert result.theta == pytest.approx(float(q), abs=1e-12)
        assert result.bottleneck_subset == subset

    @pytest.mark.slow
    def test_smoke(self, rng):
        result = maxmin_angle_polygon(rng.random((5000, 2)))
        assert math.pi / 2 < result.theta < math.pi
