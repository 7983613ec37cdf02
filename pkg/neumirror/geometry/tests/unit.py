# -*- coding: utf-8 -*-

# Copyright 2026,  The neumirror developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

import logging
import math

import numpy as np

from neumirror.core.constants import Inside
from neumirror.core.exceptions import InputError
from neumirror.core.tests.utils import NeumirrorTestCase
from neumirror.geometry.exceptions import (
    FlatMatch,
    InvalidVector,
    JointPoint,
    NoIntersection,
    NotClosed,
    NotConvex,
    RhoTooLarge,
    TangentLine,
)
from neumirror.geometry.models import CircleArc, EllipseArc, LineRepr, Segment, Vec2
from neumirror.geometry.utils import (
    build_curve,
    curvature_at,
    curve_from_dict,
    domain_to_dict,
    fillet_smooth,
    find_by_normal_angle,
    hausdorff_distance,
    is_inside,
    line_boundary_intersections,
    normal_at,
    piece_from_dict,
    reflect_point,
    reflect_points,
)

logger = logging.getLogger(__name__)


def polygon(*corners):
    return [Segment(corners[k], corners[(k + 1) % len(corners)]) for k in range(len(corners))]


class VectorTestCase(NeumirrorTestCase):

    def test_finite(self):
        with self.assertRaises(InvalidVector):
            Vec2(float('nan'), 0.0)
        with self.assertRaises(InvalidVector):
            Vec2(0.0, float('inf'))

    def test_arithmetic(self):
        v = Vec2(1, 2)
        self.assertEqual(v + (1, 1), Vec2(2, 3))
        self.assertEqual(2 * v, Vec2(2, 4))
        self.assertEqual(v.rotate90(), Vec2(-2, 1))
        self.assertEqual(v.cross((0, 1)), 1.0)

    def test_line_angle_normalized(self):
        self.assertEqual(LineRepr(math.pi, (0, 0)).angle, 0.0)
        self.assertAlmostEqual(LineRepr(-math.pi / 4, (0, 0)).angle, 3 * math.pi / 4)
        line = LineRepr.through((0, 0), (0, -1))
        self.assertAlmostEqual(line.angle, math.pi / 2)
        self.assertVecAlmostEqual(line.m, (1, 0), tol=1e-15)


class ConstructionTestCase(NeumirrorTestCase):
    presets = ('disk', 'square', 'example1', 'example2')

    def test_disk(self):
        disk = self.curves['disk']
        self.assertAlmostEqual(disk.total_length, 2 * math.pi, places=12)
        self.assertAlmostEqual(disk.area, math.pi, places=10)
        self.assertAlmostEqual(disk.diameter, 2.0, places=6)
        self.assertEqual(disk.corner_indices, [])

    def test_full_ellipse_length(self):
        curve = build_curve([EllipseArc((0, 0), (3, 2), 0.0, 2 * math.pi)])
        self.assertAlmostEqual(curve.total_length, 15.865439589290589, places=8)
        self.assertAlmostEqual(curve.area, 6 * math.pi, places=9)

    def test_ellipse_normal_inverse(self):
        arc = EllipseArc((0, 0), (3, 2), 0.0, math.pi / 2)
        for t in (0.1, 0.6, 1.4):
            target = math.pi + math.atan(1.5 * math.tan(t))
            sig = arc.sigma_of_normal_angle(target)
            self.assertAlmostEqual(float(arc.parameter(sig)), t, places=9)
            self.assertAlmostEqual(float(arc.normal_angle(sig)), target, places=9)

    def test_square_corners(self):
        square = self.curves['square']
        self.assertEqual(square.corner_indices, [0, 1, 2, 3])
        self.assertVecAlmostEqual(square.corner_s, [0, 1, 2, 3])
        self.assertAlmostEqual(square.total_turning, 2 * math.pi)

    def test_examples_are_closed_and_convex(self):
        for name in ('example1', 'example2'):
            curve = self.curves[name]
            self.assertAlmostEqual(curve.total_turning, 2 * math.pi, places=6)
            self.assertGreater(curve.area, 0.0)

    def test_example2_aspect(self):
        curve = self.curves['example2']
        self.assertAlmostEqual(curve.diameter, 2.6, places=5)
        self.assertAlmostEqual(curve.width, 2.0, places=5)

    def test_not_closed(self):
        with self.assertRaises(NotClosed) as cm:
            build_curve([Segment((0, 0), (1, 0)), Segment((1, 0), (1, 1)),
                         Segment((1, 1), (0, 0.9))])
        self.assertEqual(cm.exception.payload['piece'], 2)

    def test_not_convex(self):
        with self.assertRaises(NotConvex):
            build_curve(polygon((0, 0), (2, 0), (2, 2), (1, 0.5), (0, 2)))

    def test_clockwise(self):
        with self.assertRaises(NotConvex):
            build_curve(polygon((0, 0), (0, 1), (1, 1), (1, 0)))

    def test_piece_from_dict(self):
        piece = piece_from_dict({'kind': 'segment', 'from': [0, 0], 'to': [3, 4]})
        self.assertEqual(piece.length, 5.0)
        with self.assertRaises(InputError):
            piece_from_dict({'kind': 'spline'})
        with self.assertRaises(InputError):
            piece_from_dict({'kind': 'circle_arc', 'center': [0, 0]})

    def test_document_keeps_hash(self):
        curve = self.curves['example1']
        doc = domain_to_dict(curve, alpha=0.7)
        rebuilt, alpha = curve_from_dict(doc)
        self.assertEqual(alpha, 0.7)
        self.assertEqual(rebuilt.domain_hash, curve.domain_hash)


class QueryTestCase(NeumirrorTestCase):
    presets = ('disk', 'square', 'example1')

    def test_disk_frame(self):
        disk = self.curves['disk']
        self.assertVecAlmostEqual(disk.point_at(0.0), (1, 0))
        self.assertVecAlmostEqual(normal_at(disk, 0.0), (-1, 0))
        self.assertVecAlmostEqual(disk.tangent_at(math.pi / 2), (-1, 0))
        self.assertAlmostEqual(curvature_at(disk, 1.0), 1.0)

    def test_parameter_wraps(self):
        disk = self.curves['disk']
        self.assertVecAlmostEqual(disk.point_at(2 * math.pi + 0.5), disk.point_at(0.5))
        self.assertVecAlmostEqual(disk.point_at(-0.5), disk.point_at(2 * math.pi - 0.5))

    def test_corner_normal(self):
        square = self.curves['square']
        with self.assertRaises(JointPoint) as cm:
            normal_at(square, 1.0)
        self.assertVecAlmostEqual(cm.exception.payload['left'], (0, 1))
        self.assertVecAlmostEqual(cm.exception.payload['right'], (-1, 0))
        self.assertVecAlmostEqual(normal_at(square, 0.5), (0, 1))

    def test_normal_angle_nondecreasing(self):
        curve = self.curves['example1']
        s = np.linspace(0.0, curve.total_length, 2000, endpoint=False)
        angles = curve.normal_angle_at(s)
        self.assertTrue(np.all(np.diff(angles) >= -1e-12))

    def test_find_by_normal_angle(self):
        disk = self.curves['disk']
        s, point = find_by_normal_angle(disk, 3 * math.pi / 2)
        self.assertAlmostEqual(s, math.pi / 2, places=9)
        self.assertVecAlmostEqual(point, (0, 1))

    def test_find_by_normal_angle_corner(self):
        # the corner (1, 0) owns every normal strictly between up and left
        s, point = find_by_normal_angle(self.curves['square'], 3 * math.pi / 4)
        self.assertAlmostEqual(s, 1.0)
        self.assertVecAlmostEqual(point, (1, 0))

    def test_find_by_normal_angle_flat(self):
        with self.assertRaises(FlatMatch) as cm:
            find_by_normal_angle(self.curves['square'], math.pi / 2)
        self.assertVecAlmostEqual(cm.exception.payload['interval'], (0.0, 1.0))

    def test_example1_normal_round_trip(self):
        curve = self.curves['example1']
        for s in (0.3, 2.0, 5.5, 9.0):
            beta = math.atan2(*normal_at(curve, s)[::-1])
            found, _ = find_by_normal_angle(curve, beta)
            self.assertAlmostEqual(found, s, places=7)

    def test_line_intersections(self):
        disk = self.curves['disk']
        s_p, s_q = line_boundary_intersections(disk, LineRepr(math.pi / 2, (0, 0)))
        self.assertVecAlmostEqual(disk.point_at(s_p), (0, -1), tol=1e-8)
        self.assertVecAlmostEqual(disk.point_at(s_q), (0, 1), tol=1e-8)

        s_p, s_q = line_boundary_intersections(disk, LineRepr(0.0, (0, 0.5)))
        self.assertLess(disk.point_at(s_p)[0], 0)
        self.assertAlmostEqual(disk.point_at(s_q)[0], math.sqrt(0.75), places=8)

    def test_line_misses(self):
        disk = self.curves['disk']
        with self.assertRaises(NoIntersection):
            line_boundary_intersections(disk, LineRepr(0.0, (0, 5)))
        with self.assertRaises(TangentLine):
            line_boundary_intersections(disk, LineRepr(0.0, (0, 1)))

    def test_reflection(self):
        line = LineRepr(math.pi / 4, (0, 0))
        self.assertVecAlmostEqual(reflect_point((1, 0), line), (0, 1), tol=1e-15)
        self.assertVecAlmostEqual(reflect_point(reflect_point((0.3, -2), line), line),
                                  (0.3, -2), tol=1e-14)
        pts = reflect_points([[1, 0], [2, 1]], [[0, 0], [0, 1]], [math.pi / 4, 0.0])
        self.assertVecAlmostEqual(pts, [[0, 1], [2, 1]], tol=1e-15)

    def test_is_inside(self):
        disk = self.curves['disk']
        self.assertEqual(is_inside(disk, (0.2, 0.3)), Inside.INSIDE)
        self.assertEqual(is_inside(disk, (0.6, 0.8)), Inside.BOUNDARY)
        self.assertEqual(is_inside(disk, (1.2, 0.0)), Inside.OUTSIDE)

    def test_mirrored(self):
        curve = self.curves['example1']
        mirror = curve.mirrored()
        self.assertAlmostEqual(mirror.total_length, curve.total_length)
        for s in (0.25, 3.0, 7.5):
            x, y = curve.point_at(s)
            self.assertVecAlmostEqual(mirror.point_at(curve.total_length - s), (-x, y),
                                      tol=1e-9)


class OracleTestCase(NeumirrorTestCase):
    presets = ('disk', 'square')

    def test_signed_distance(self):
        oracle = self.curves['disk'].oracle
        d = oracle.signed_distance([[0, 0], [0.5, 0], [0, 1.5]])
        self.assertVecAlmostEqual(d, [1.0, 0.5, -0.5], tol=1e-9)

    def test_project_outside_corner(self):
        s, foot, dist = self.curves['square'].oracle.project([[1.5, -0.5]])
        self.assertVecAlmostEqual(foot[0], (1, 0), tol=1e-9)
        self.assertAlmostEqual(dist[0], math.sqrt(0.5), places=9)

    def test_contains(self):
        oracle = self.curves['square'].oracle
        inside = oracle.contains([[0.5, 0.5], [1.0, 0.5], [1.0 + 1e-6, 0.5]], tol=1e-9)
        self.assertEqual(inside.tolist(), [True, True, False])

    def test_ray_exit(self):
        oracle = self.curves['disk'].oracle
        t, s = oracle.ray_exit([[0, 0], [0.5, 0]], [[1, 0], [0, 1]])
        self.assertVecAlmostEqual(t, [1.0, math.sqrt(0.75)], tol=1e-9)
        self.assertAlmostEqual(s[0] % (2 * math.pi), 0.0, places=9)

    def test_chords(self):
        s_p, s_q = self.curves['square'].oracle.chords([[0.5, 0.5]], [math.pi / 2])
        self.assertAlmostEqual(s_p[0], 0.5, places=9)
        self.assertAlmostEqual(s_q[0], 2.5, places=9)


class SmoothingTestCase(NeumirrorTestCase):
    presets = ('square', 'disk')

    def test_fillet_square(self):
        rho = 0.1
        smooth = fillet_smooth(self.curves['square'], rho)
        self.assertEqual(smooth.corner_indices, [])
        self.assertEqual(len(smooth), 8)
        self.assertAlmostEqual(smooth.total_length, 4 - 8 * rho + 2 * math.pi * rho, places=9)
        self.assertAlmostEqual(hausdorff_distance(self.curves['square'], smooth),
                               rho * (math.sqrt(2) - 1), places=6)

    def test_fillet_without_corners(self):
        self.assertIs(fillet_smooth(self.curves['disk'], 0.1), self.curves['disk'])

    def test_rho_too_large(self):
        with self.assertRaises(RhoTooLarge):
            fillet_smooth(self.curves['square'], 0.6)

    def test_hausdorff_concentric(self):
        small = build_curve([CircleArc((0, 0), 0.5, 0.0, 2 * math.pi)])
        self.assertAlmostEqual(hausdorff_distance(self.curves['disk'], small), 0.5, places=9)
