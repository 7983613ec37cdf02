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

from neumirror.core.constants import Family, Level, Side
from neumirror.core.exceptions import InputError
from neumirror.core.tests.utils import NeumirrorTestCase
from neumirror.hinges.exceptions import (
    FamilyViolation,
    NotAdmissible,
    OnMirror,
    SpecialPointsError,
    TangentialIntersection,
)
from neumirror.hinges.models import Chord
from neumirror.hinges.special import FORBIDDEN, compute_special_points, is_hinge_free
from neumirror.hinges.utils import (
    boundary_offsets,
    chord_through,
    extremal_points,
    field_F,
    field_G,
    hinge_intervals,
    hinge_of,
    hinge_summary,
    is_active,
    normal_direction_angle,
    reflected_depth,
    scan_hinges,
)

logger = logging.getLogger(__name__)


class DiskChordTestCase(NeumirrorTestCase):
    presets = ('disk',)

    def setUp(self):
        super(DiskChordTestCase, self).setUp()
        self.disk = self.curves['disk']
        # vertical diameter from (0, -1) up to (0, 1)
        self.diameter = Chord(self.disk, 1.5 * math.pi, 0.5 * math.pi)
        # vertical chord at x = 0.5
        self.offset = Chord(self.disk, 5 * math.pi / 3, math.pi / 3)

    def test_chord_frame(self):
        self.assertVecAlmostEqual(self.diameter.p, (0, 1))
        self.assertVecAlmostEqual(self.diameter.m, (1, 0))
        self.assertAlmostEqual(self.diameter.angle, math.pi / 2)
        self.assertAlmostEqual(self.diameter.length, 2.0)
        self.assertAlmostEqual(self.diameter.right_length, math.pi)
        self.assertLess(self.diameter.side([[0.5, 0.0]])[0], 0)

    def test_degenerate_chord(self):
        with self.assertRaises(NotAdmissible):
            Chord(self.disk, 1.0, 1.0)

    def test_symmetric_hinge(self):
        hinge = hinge_of(self.disk, self.diameter, math.pi / 3)
        self.assertVecAlmostEqual(hinge.H, (0, 2 / math.sqrt(3)), tol=1e-9)
        self.assertEqual(hinge.side, Side.RIGHT)
        self.assertEqual(hinge.level, Level.UPPER)
        self.assertAlmostEqual(hinge.d, 2 / math.sqrt(3) - 1, places=9)

    def test_lower_hinge(self):
        hinge = hinge_of(self.disk, self.diameter, 7 * math.pi / 6)
        self.assertEqual(hinge.side, Side.LEFT)
        self.assertEqual(hinge.level, Level.LOWER)
        self.assertAlmostEqual(hinge.d, 1.0, places=9)

    def test_parallel_tangent_has_no_hinge(self):
        self.assertIsNone(hinge_of(self.disk, self.diameter, 0.0))

    def test_activity(self):
        self.assertTrue(is_active(self.disk, self.offset, 0.0))
        self.assertFalse(is_active(self.disk, self.offset, math.pi))
        with self.assertRaises(OnMirror):
            is_active(self.disk, self.offset, math.pi / 3)

    def test_reflected_depth(self):
        depth = reflected_depth(self.disk, self.offset, [0.0, math.pi])
        # (1, 0) reflects to (0, 0); (-1, 0) reflects to (2, 0)
        self.assertVecAlmostEqual(depth, [1.0, -1.0], tol=1e-8)

    def test_chord_end_neighbours_keep_their_side(self):
        # vertical chord at x = -0.2: every right point reflects outside the disk
        c = math.acos(-0.2)
        chord = Chord(self.disk, 2 * math.pi - c, c)
        s = c - 3.5e-9
        depth = reflected_depth(self.disk, chord, [s])[0]
        self.assertTrue(-self.disk.tol_boundary < depth < 0)
        self.assertFalse(is_active(self.disk, chord, s))
        summary = hinge_summary(hinge_intervals(self.disk, chord, n=400))
        self.assertEqual({side for side, _ in summary}, {Side.LEFT})

    def test_intervals(self):
        intervals = hinge_intervals(self.disk, self.offset, n=400)
        self.assertEqual(hinge_summary(intervals),
                         {(Side.RIGHT, Level.UPPER), (Side.RIGHT, Level.LOWER)})
        self.assertFalse(is_hinge_free(self.disk, self.offset, n=400))
        self.assertTrue(hinge_summary(intervals) & FORBIDDEN)

    def test_intervals_cover_boundary(self):
        intervals = hinge_intervals(self.disk, self.offset, n=400)
        total = sum((iv.s_to - iv.s_from) % self.disk.total_length for iv in intervals)
        self.assertAlmostEqual(total, self.disk.total_length, places=9)

    def test_boundary_offsets(self):
        offsets = boundary_offsets(self.offset, 100, 10)
        self.assertIn(self.offset.right_length, offsets)
        self.assertTrue(np.all(offsets >= 0))
        self.assertTrue(np.all(offsets < self.disk.total_length))
        self.assertTrue(np.all(np.diff(offsets) > 0))

    def test_scan_rows(self):
        rows = scan_hinges(self.disk, self.offset, n=200)
        inactive = [r for r in rows if not r['active']]
        self.assertTrue(inactive)
        self.assertTrue(all(math.isnan(r['d']) and r['level'] == '' for r in inactive))

    def test_extremal_points_tangential(self):
        # every reflected point of a diameter lands back on the circle
        with self.assertRaises(TangentialIntersection):
            extremal_points(self.disk, self.diameter, Family.P1_P3, n=200)

    def test_extremal_points_unknown_family(self):
        with self.assertRaises(FamilyViolation):
            extremal_points(self.disk, self.diameter, 'A(P2,P5)')

    def test_fields(self):
        chord = self.diameter
        f = field_F(self.disk, chord, chord.Q, 2.0, n_X=(0, -1))
        g = field_G(self.disk, chord, chord.P, 2.0, n_Y=(0, 1))
        self.assertVecAlmostEqual(f, (1.0, 0.0), tol=1e-12)
        self.assertVecAlmostEqual(g, (0.0, -1.0), tol=1e-12)

    def test_normal_direction_angle(self):
        self.assertAlmostEqual(normal_direction_angle(self.disk, 0.0), math.pi)
        self.assertAlmostEqual(normal_direction_angle(self.disk, 0.0, flip=True), 0.0)

    def test_chord_through(self):
        chord = chord_through(self.disk, 1.5 * math.pi, math.pi / 2, lower=True)
        self.assertVecAlmostEqual(chord.Q, (0, 1), tol=1e-9)
        chord = chord_through(self.disk, 0.5 * math.pi, math.pi / 2, lower=False)
        self.assertVecAlmostEqual(chord.P, (0, -1), tol=1e-9)

    def test_chord_through_tangent(self):
        with self.assertRaises(NotAdmissible):
            chord_through(self.disk, 1.5 * math.pi, 0.0)


class SpecialPointsInputTestCase(NeumirrorTestCase):
    presets = ('disk', 'square')

    def test_alpha_range(self):
        for alpha in (0.0, math.pi / 2, -0.3):
            with self.assertRaises(InputError):
                compute_special_points(self.curves['disk'], alpha)

    def test_disk_has_no_special_points(self):
        with self.assertRaises(SpecialPointsError):
            compute_special_points(self.curves['disk'], math.pi / 4)

    def test_square_has_no_special_points(self):
        with self.assertRaises(SpecialPointsError):
            compute_special_points(self.curves['square'], math.pi / 4)
