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
from mock import Mock, patch

from neumirror.core.constants import Multiplicity
from neumirror.core.exceptions import InputError
from neumirror.core.tests.utils import NeumirrorTestCase
from neumirror.spectral.analysis import (
    analyze_eigenfunction,
    disk_eigenvalue,
    hot_spots,
    monotonicity,
    multiplicity_verdict,
    nodal_segments,
    richardson,
    sign_check,
)
from neumirror.spectral.exceptions import (
    DegenerateTriangle,
    MeshQualityFailure,
    MeshTooCoarse,
)
from neumirror.spectral.fem import (
    assemble_fem,
    eigen_residuals,
    eigen_smallest,
    element_matrices,
)
from neumirror.spectral.heat import Bump, heat_fem
from neumirror.spectral.mesh import triangulate
from neumirror.spectral.models import TriMesh

logger = logging.getLogger(__name__)


class TriMeshTestCase(NeumirrorTestCase):

    def test_orientation_fixed(self):
        mesh = TriMesh([(0, 0), (0, 1), (1, 0)], [[0, 1, 2]], 3, 1.0)
        self.assertAlmostEqual(mesh.areas[0], 0.5)
        self.assertAlmostEqual(np.sum(mesh.angles), 180.0)

    def test_degenerate(self):
        mesh = TriMesh([(0, 0), (1, 0), (2, 0)], [[0, 1, 2]], 3, 1.0)
        with self.assertRaises(DegenerateTriangle):
            mesh.validate()

    def test_gradient_of_linear(self):
        mesh = TriMesh([(0, 0), (2, 0), (0, 1), (2, 1)], [[0, 1, 2], [1, 3, 2]], 4, 1.0)
        values = 3.0 * mesh.vertices[:, 0] - 2.0 * mesh.vertices[:, 1]
        self.assertVecAlmostEqual(mesh.gradient_of(values), [[3.0, -2.0], [3.0, -2.0]],
                                  tol=1e-12)

    def test_reference_element(self):
        K, M = element_matrices([(0, 0), (1, 0), (0, 1)])
        self.assertVecAlmostEqual(K, 0.5 * np.array([[2, -1, -1], [-1, 1, 0], [-1, 0, 1]]),
                                  tol=1e-14)
        self.assertVecAlmostEqual(M, np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]]) / 24.0,
                                  tol=1e-14)


class TriangulateTestCase(NeumirrorTestCase):
    presets = ('square', 'disk')

    @classmethod
    def setUpClass(cls):
        super(TriangulateTestCase, cls).setUpClass()
        cls.square = triangulate(cls.curves['square'], 0.1)
        cls.disk = triangulate(cls.curves['disk'], 0.1)

    def test_square_partition(self):
        self.assertAlmostEqual(self.square.total_area, 1.0, places=9)
        self.assertGreaterEqual(self.square.min_angle, 15.0)
        self.assertTrue(np.all(self.square.areas > 0))

    def test_square_corners_are_vertices(self):
        for corner in [(0, 0), (1, 0), (1, 1), (0, 1)]:
            gap = np.min(np.linalg.norm(self.square.vertices - np.asarray(corner), axis=1))
            self.assertLess(gap, 1e-12)

    def test_boundary_vertices(self):
        depth = self.disk.vertices[:self.disk.n_boundary]
        self.assertVecAlmostEqual(np.linalg.norm(depth, axis=1),
                                  np.ones(self.disk.n_boundary), tol=1e-12)
        inner = np.linalg.norm(self.disk.vertices[self.disk.n_boundary:], axis=1)
        self.assertTrue(np.all(inner < 1.0))

    def test_disk_vertex_count(self):
        self.assertBetween(self.disk.n_vertices, 0.7 * math.pi / 0.01, 1.3 * math.pi / 0.01)

    def test_delaunay_audit(self):
        mesh = self.disk
        rng = np.random.default_rng(4)
        tris = rng.integers(0, len(mesh.triangles), 1000)
        verts = rng.integers(0, mesh.n_vertices, 1000)
        for t, v in zip(tris, verts):
            a, b, c = mesh.vertices[mesh.triangles[t]]
            d = mesh.vertices[v]
            rows = np.array([[p[0] - d[0], p[1] - d[1], (p[0] - d[0]) ** 2 + (p[1] - d[1]) ** 2]
                             for p in (a, b, c)])
            # positive determinant: d strictly inside the circumcircle of a ccw triangle
            self.assertLess(np.linalg.det(rows), 1e-12)

    def test_too_coarse(self):
        with self.assertRaises(MeshTooCoarse):
            triangulate(self.curves['square'], 0.5)

    def test_quality_retries_exhausted(self):
        with self.assertRaises(MeshQualityFailure):
            triangulate(self.curves['square'], 0.1, min_angle=70.0)


class AssemblyTestCase(NeumirrorTestCase):
    presets = ('square',)

    @classmethod
    def setUpClass(cls):
        super(AssemblyTestCase, cls).setUpClass()
        cls.mesh = triangulate(cls.curves['square'], 0.1)
        cls.K, cls.M = assemble_fem(cls.mesh)

    def test_constants_in_kernel(self):
        ones = np.ones(self.mesh.n_vertices)
        self.assertLess(np.max(np.abs(self.K @ ones)), 1e-10)

    def test_mass_is_area(self):
        ones = np.ones(self.mesh.n_vertices)
        self.assertAlmostEqual(ones @ (self.M @ ones), 1.0, places=8)

    def test_symmetric(self):
        self.assertEqual(abs(self.K - self.K.T).max(), 0.0)
        self.assertEqual(abs(self.M - self.M.T).max(), 0.0)

    def test_threads_agree(self):
        K, M = assemble_fem(self.mesh, threads=3)
        self.assertLess(abs(K - self.K).max(), 1e-14)
        self.assertLess(abs(M - self.M).max(), 1e-14)

    def test_eigenpairs(self):
        mu, vectors = eigen_smallest(self.K, self.M, 4)
        self.assertLess(abs(mu[0]), 1e-8 * mu[1])
        self.assertAlmostEqual(mu[1] / math.pi ** 2, 1.0, delta=0.03)
        self.assertAlmostEqual(mu[2] / math.pi ** 2, 1.0, delta=0.03)
        res, gram = eigen_residuals(self.K, self.M, mu, vectors)
        self.assertLess(np.max(res[1:]), 1e-8)
        self.assertLess(gram, 1e-8)

    def test_too_few_pairs(self):
        with self.assertRaises(InputError):
            eigen_smallest(self.K, self.M, 2)


class RichardsonTestCase(NeumirrorTestCase):

    def test_quadratic_sequence(self):
        values = [1.0 + 0.7 * h ** 2 for h in (0.1, 0.05, 0.025)]
        ret = richardson(values)
        self.assertAlmostEqual(ret['value'], 1.0, places=12)
        self.assertAlmostEqual(ret['order'], 2.0, places=9)
        self.assertAlmostEqual(ret['error'], 0.7 * 0.025 ** 2, places=12)

    def test_single_value(self):
        self.assertEqual(richardson([2.5]), {'value': 2.5, 'error': None, 'order': None})

    def test_verdicts(self):
        self.assertEqual(multiplicity_verdict(0.5, 1e-3), Multiplicity.SIMPLE)
        self.assertEqual(multiplicity_verdict(1e-4, 1e-3), Multiplicity.DOUBLE)
        self.assertEqual(multiplicity_verdict(5e-3, 1e-3), Multiplicity.UNRESOLVED)
        self.assertEqual(multiplicity_verdict(0.5, None), Multiplicity.UNRESOLVED)

    def test_disk_oracle(self):
        self.assertAlmostEqual(math.sqrt(disk_eigenvalue()), 1.8411838, places=6)
        self.assertAlmostEqual(disk_eigenvalue(2.0), disk_eigenvalue() / 4.0, places=12)


class EigenfunctionToolsTestCase(NeumirrorTestCase):
    presets = ('square',)

    @classmethod
    def setUpClass(cls):
        super(EigenfunctionToolsTestCase, cls).setUpClass()
        cls.mesh = triangulate(cls.curves['square'], 0.1)

    def test_nodal_line_of_linear_function(self):
        psi = self.mesh.vertices[:, 0] - 0.5 + 1e-3
        segments = nodal_segments(self.mesh, psi)
        self.assertGreater(len(segments), 5)
        self.assertVecAlmostEqual(segments[..., 0], np.full(segments.shape[:2], 0.5 - 1e-3),
                                  tol=1e-12)

    def test_hot_spots(self):
        psi = self.mesh.vertices[:, 0] - 0.5
        spots = hot_spots(self.mesh, psi)
        self.assertTrue(spots['holds'])
        self.assertAlmostEqual(spots['argmax'][0], 1.0)
        self.assertAlmostEqual(spots['argmin'][0], 0.0)
        interior = np.zeros(self.mesh.n_vertices)
        interior[self.mesh.n_vertices - 1] = 1.0
        self.assertFalse(hot_spots(self.mesh, interior)['max_on_boundary'])

    def test_monotonicity_sign(self):
        rng = np.random.default_rng(8)
        xs = rng.uniform(0.05, 0.5, size=(200, 2))
        ys = xs + np.array([0.3, 0.0])
        for scale in (2.0, -0.5):
            psi = scale * self.mesh.vertices[:, 0]
            report = monotonicity(self.mesh, psi, xs, ys)
            self.assertEqual(report.fraction, 1.0)
            self.assertEqual(report.sign, 1 if scale > 0 else -1)
            self.assertEqual(report.worst, 0.0)


class SignChoiceTestCase(NeumirrorTestCase):
    presets = ('square',)

    # caps x < 0.3 and x > 0.7, middle band 0.2 < x < 0.8
    POINTS = {
        'P1': (0.3, 0.0), "Q6'": (0.3, 1.0), "P1'": (0.7, 0.0), 'Q6': (0.7, 1.0),
        'P3': (0.2, 0.0), "Q4'": (0.2, 1.0), "P3'": (0.8, 0.0), 'Q4': (0.8, 1.0),
    }

    @classmethod
    def setUpClass(cls):
        super(SignChoiceTestCase, cls).setUpClass()
        cls.mesh = triangulate(cls.curves['square'], 0.1)

    def setUp(self):
        super(SignChoiceTestCase, self).setUp()
        self.special = Mock(alpha=math.pi / 4)
        self.special.point.side_effect = lambda name: np.array(self.POINTS[name])
        # odd under x -> 1 - x: increasing along T pairs, wrong-signed on both caps
        self.psi = self.mesh.vertices[:, 0] - 0.5
        rng = np.random.default_rng(4)
        self.xs = rng.uniform((0.05, 0.05), (0.5, 0.95), size=(200, 2))
        self.ys = self.xs + np.array([0.3, 0.0])

    def test_separate_choices_disagree(self):
        self.assertEqual(monotonicity(self.mesh, self.psi, self.xs, self.ys).sign, 1)
        self.assertEqual(sign_check(self.mesh, self.psi, self.special)['sign'], -1)
        forced = sign_check(self.mesh, self.psi, self.special, sign=1)
        self.assertEqual(forced['sign'], 1)
        self.assertEqual(forced['violations'], forced['n_left'] + forced['n_right'])

    @patch('neumirror.spectral.analysis.sample_T_pairs')
    def test_one_sign_for_all_checks(self, pairs):
        pairs.return_value = (self.xs, self.ys)
        report = Mock(multiplicity=Multiplicity.SIMPLE, mesh=self.mesh, psi_error=0.0)
        report.eigenvector.return_value = self.psi
        ret = analyze_eigenfunction(self.curves['square'], self.special, object(), report,
                                    n_pairs=200)
        self.assertEqual(ret.monotonicity.sign, 1)
        self.assertEqual(ret.monotonicity.fraction, 1.0)
        self.assertEqual(ret.sign['sign'], 1)
        self.assertGreater(ret.sign['violations'], 0)
        self.assertEqual(ret.sign['violation_fraction'], 1.0)
        self.assertEqual(ret.gradient_cone['sign'], 1)
        self.assertEqual(ret.gradient_cone['fraction'], 1.0)


class HeatUnitTestCase(NeumirrorTestCase):
    presets = ('disk',)

    def test_bump(self):
        bump = Bump((0.1, 0.0), 0.4, height=2.0)
        self.assertVecAlmostEqual(bump([(0.1, 0.0), (0.6, 0.0), (0.1, 0.39)]),
                                  [2.0, 0.0, 2.0 * math.exp(1.0 - 1.0 / (1.0 - 0.39 ** 2 / 0.16))],
                                  tol=1e-12)
        bump.check_inside(self.curves['disk'])
        with self.assertRaises(InputError):
            Bump((0.8, 0.0), 0.4).check_inside(self.curves['disk'])

    def test_mass_conserved(self):
        mesh = triangulate(self.curves['disk'], 0.1)
        K, M = assemble_fem(mesh)
        bump = Bump((0.2, 0.1), 0.5)
        u0 = heat_fem(mesh, bump, 0.0, K=K, M=M)
        np.testing.assert_array_equal(u0, bump(mesh.vertices))
        u = heat_fem(mesh, bump, 0.3, n_steps=30, K=K, M=M)
        ones = np.ones(mesh.n_vertices)
        self.assertAlmostEqual(ones @ (M @ u), ones @ (M @ u0), places=12)
        self.assertLess(np.max(u), np.max(u0))
