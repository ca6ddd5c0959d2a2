from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import CUBE, CUBE_CENTER, TETRA_SOLID_ANGLE, TETRAHEDRON, random_similarity
from decgreedy.core import DegenerateHull, NoPolyhedron
from decgreedy.geometry import (
    SolidAngleInstance, convex_hull_3d, descartes_defect_sum, maxmin_solid_angle_polyhedron,
    point_quality_3d, van_oosterom_strackee, vertex_solid_angle, vertex_solid_angles
)
from decgreedy.oracles import bottleneck_subset_oracle


class TestHull3:
    def test_tetrahedron(self):
        hull = convex_hull_3d(TETRAHEDRON)
        assert hull.vertices == [0, 1, 2, 3]
        assert len(hull.facets) == 4
        assert hull.volume == pytest.approx(8 / 3)

    def test_outward_orientation(self, rng):
        pts = rng.random((30, 3))
        hull = convex_hull_3d(pts)
        centroid = pts[hull.vertices].mean(axis=0)
        tri = pts[hull.facets]
        normals = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        assert (np.einsum('ij,ij->i', normals, tri[:, 0] - centroid) > 0).all()

    def test_cube_center_is_not_a_vertex(self):
        assert convex_hull_3d(CUBE_CENTER).vertices == list(range(8))

    def test_coplanar(self):
        square = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0.5, 0.5, 0]], dtype=float)
        with pytest.raises(DegenerateHull):
            convex_hull_3d(square)

    def test_too_few_points(self):
        with pytest.raises(DegenerateHull):
            convex_hull_3d(TETRAHEDRON[:3])


class TestSolidAngles:
    def test_octant(self):
        e = np.eye(3)
        assert float(van_oosterom_strackee(e[0], e[1], e[2])) == pytest.approx(math.pi / 2)
        assert float(van_oosterom_strackee(e[0], e[2], e[1])) == pytest.approx(-math.pi / 2)

    def test_tetrahedron_corner(self):
        hull = convex_hull_3d(TETRAHEDRON)
        for v, a in vertex_solid_angles(hull).items():
            assert a == pytest.approx(TETRA_SOLID_ANGLE, abs=1e-12)
            assert vertex_solid_angle(hull, v) == pytest.approx(TETRA_SOLID_ANGLE, abs=1e-12)

    def test_cube_corner(self):
        hull = convex_hull_3d(CUBE)
        assert all(a == pytest.approx(math.pi / 2, abs=1e-12) for a in vertex_solid_angles(hull).values())

    def test_both_formulas_agree(self, rng):
        hull = convex_hull_3d(rng.normal(size=(40, 3)))
        batch = vertex_solid_angles(hull)
        for v in hull.vertices:
            assert vertex_solid_angle(hull, v) == pytest.approx(batch[v], abs=1e-9)

    def test_descartes(self, rng):
        for pts in (TETRAHEDRON, CUBE, rng.random((50, 3))):
            hull = convex_hull_3d(pts)
            assert descartes_defect_sum(hull) == pytest.approx(4 * math.pi, abs=1e-9)


class TestPointQuality:
    def test_interior(self):
        hull = convex_hull_3d(CUBE_CENTER)
        assert point_quality_3d(8, hull) == 4 * math.pi

    def test_face_center(self):
        hull = convex_hull_3d(np.vstack([CUBE, [[0.5, 0.5, 1.0]]]))
        assert float(point_quality_3d(8, hull)) == pytest.approx(2 * math.pi, abs=1e-9)

    def test_edge_midpoint(self):
        # a cube edge has a right dihedral angle, so its lune is pi
        hull = convex_hull_3d(np.vstack([CUBE, [[0.5, 0.0, 0.0]]]))
        assert float(point_quality_3d(8, hull)) == pytest.approx(math.pi, abs=1e-9)

    def test_vertex(self):
        hull = convex_hull_3d(CUBE)
        assert float(point_quality_3d(0, hull)) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_no_hull(self):
        assert not point_quality_3d(0, None).is_finite


class TestMaxminSolidAnglePolyhedron:
    def test_tetrahedron(self):
        result = maxmin_solid_angle_polyhedron(TETRAHEDRON)
        assert result.theta == pytest.approx(TETRA_SOLID_ANGLE, abs=1e-12)
        assert result.vertices == [0, 1, 2, 3]

    def test_cube_center(self):
        result = maxmin_solid_angle_polyhedron(CUBE_CENTER)
        assert result.theta == pytest.approx(math.pi / 2, abs=1e-12)
        assert result.vertices == list(range(8))
        assert result.bottleneck_subset == set(range(9))
        assert len(result.facets) == 12

    @pytest.mark.parametrize('points', [
        TETRAHEDRON[:3],
        [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]],
    ])
    def test_no_polyhedron(self, points):
        with pytest.raises(NoPolyhedron):
            maxmin_solid_angle_polyhedron(points)

    def test_matches_subset_oracle(self, rng):
        for _ in range(100):
            pts = rng.random((int(rng.integers(4, 9)), 3))
            result = maxmin_solid_angle_polyhedron(pts)
            q, subset = bottleneck_subset_oracle(SolidAngleInstance(pts), tolerance=1e-12)
            assert result.theta == pytest.approx(float(q), abs=1e-9)
            assert result.bottleneck_subset == subset

    def test_theta_is_min_corner(self, rng):
        pts = rng.normal(size=(60, 3))
        result = maxmin_solid_angle_polyhedron(pts)
        keep = np.zeros(len(pts), dtype=bool)
        keep[sorted(result.bottleneck_subset)] = True
        angles = vertex_solid_angles(convex_hull_3d(pts, keep))
        assert min(angles.values()) == pytest.approx(result.theta, abs=1e-12)

    def test_theta_invariant_under_relabeling_and_similarity(self, rng):
        for _ in range(20):
            pts = rng.random((int(rng.integers(4, 25)), 3))
            result = maxmin_solid_angle_polyhedron(pts)

            perm = rng.permutation(len(pts))
            permuted = maxmin_solid_angle_polyhedron(pts[perm])
            assert permuted.theta == pytest.approx(result.theta, abs=1e-9)
            assert {int(perm[i]) for i in permuted.bottleneck_subset} == result.bottleneck_subset

            moved = maxmin_solid_angle_polyhedron(random_similarity(rng, pts))
            assert moved.theta == pytest.approx(result.theta, abs=1e-9)

    @pytest.mark.slow
    def test_smoke(self, rng):
        result = maxmin_solid_angle_polyhedron(rng.normal(size=(500, 3)))
        assert 0 < result.theta < 2 * math.pi
