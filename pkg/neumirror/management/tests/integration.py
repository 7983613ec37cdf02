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

import json
import logging
import os

from neumirror.core.constants import ExitCode, Verdict
from neumirror.management.tests.unit import TempDirTestCase
from neumirror.management.tests.utils import run_cli, run_json
from neumirror.management.utils import read_artifact, read_csv

logger = logging.getLogger(__name__)


def load(path):
    with open(path) as f:
        return json.load(f)


class GeometryCommandsTestCase(TempDirTestCase):

    def test_validate(self):
        code, summary = run_json('--out-dir', self.tmp, 'validate', 'example1')
        self.assertEqual(code, ExitCode.OK)
        self.assertEqual(summary['pieces'], 5)
        doc = read_artifact(self.path('domain.json'))
        self.assertEqual(doc['manifest'], summary['manifest'])
        self.assertTrue(doc['certificates']['convex'])
        self.assertAlmostEqual(doc['certificates']['total_turning'], 2 * 3.141592653589793,
                               places=9)
        manifest = load(self.path('validate.manifest.json'))
        self.assertEqual(manifest['id'], summary['manifest'])
        self.assertEqual(manifest['domain_hash'], doc['domain_hash'])
        self.assertEqual(manifest['outputs'][0]['kind'], 'domain')
        self.assertTrue(os.path.isfile(self.path('neumirror-run.log')))

    def test_artifacts_are_reproducible(self):
        first = os.path.join(self.tmp, 'a')
        second = os.path.join(self.tmp, 'b')
        run_cli('--out-dir', first, 'special-points', 'example1')
        run_cli('--out-dir', second, '--threads', '2', 'special-points', 'example1')
        with open(os.path.join(first, 'special-points.json')) as fa, \
                open(os.path.join(second, 'special-points.json')) as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_special_points_and_plot(self):
        code, _ = run_cli('--out-dir', self.tmp, 'special-points', 'example1')
        self.assertEqual(code, ExitCode.OK)
        doc = read_artifact(self.path('special-points.json'))
        self.assertEqual(len(doc['special']['points']), 16)
        self.assertAlmostEqual(doc['special']['points']['P1']['xy'][0], -1 - 2 ** 0.5,
                               places=8)
        code, _ = run_cli('plot', self.path('special-points.json'), self.path('special.svg'))
        self.assertEqual(code, ExitCode.OK)
        with open(self.path('special.svg')) as f:
            svg = f.read()
        self.assertIn('>P1<', svg)
        self.assertIn("Q4'", svg)
        self.assertIn('stroke-dasharray', svg)

    def test_disk_has_no_special_points(self):
        code, summary = run_json('--out-dir', self.tmp, 'special-points', 'disk')
        self.assertEqual(code, ExitCode.ASSUMPTION_FAILURE)
        self.assertEqual(summary['error'], 'OrientationViolated')


class CouplingCommandsTestCase(TempDirTestCase):

    def test_lyapunov_simulate_plot(self):
        code, summary = run_json('--out-dir', self.tmp, 'lyapunov', 'example1')
        self.assertEqual(code, ExitCode.OK)
        self.assertLess(summary['closure_gap'], 1e-6)
        lyapunov = read_artifact(self.path('lyapunov.json'))
        self.assertEqual(len(lyapunov['arcs']), 8)
        self.assertIn('P5', lyapunov['special']['points'])

        code, summary = run_json('--out-dir', self.tmp, 'simulate', 'example1',
                                 '--dt', '1e-3', '--t-max', '0.05', '--stride', '5')
        self.assertEqual(code, ExitCode.OK)
        manifest_id, header, rows = read_csv(self.path('coupling-path.csv'))
        self.assertEqual(manifest_id, summary['manifest'])
        self.assertEqual(header[:3], ['t', 'Xx', 'Xy'])
        self.assertEqual(len(rows), 11)
        coupling = read_artifact(self.path('coupling.json'))
        self.assertEqual(len(coupling['chart_path']), 11)

        code, _ = run_cli('plot', self.path('coupling-path.csv'), self.path('paths.svg'),
                          '--overlay', self.path('lyapunov.json'))
        self.assertEqual(code, ExitCode.OK)
        with open(self.path('paths.svg')) as f:
            svg = f.read()
        self.assertIn('<polygon', svg)
        self.assertIn('<polyline', svg)

    def test_simulate_without_chart(self):
        code, summary = run_json('--out-dir', self.tmp, 'simulate', 'disk', '--no-lyapunov',
                                 '--x', '-0.3', '0.0', '--y', '0.3', '0.0',
                                 '--dt', '1e-2', '--t-max', '0.2')
        self.assertEqual(code, ExitCode.OK)
        self.assertIn('zeta', summary)
        code, summary = run_json('--out-dir', self.tmp, 'simulate', 'disk', '--no-lyapunov')
        self.assertEqual(code, ExitCode.INPUT_ERROR)

    def test_invariance(self):
        code, summary = run_json('--out-dir', self.tmp, 'invariance', 'example1',
                                 '--dt-ladder', '1e-2', '1e-3', '--t-max', '0.05',
                                 '--paths', '20', '--starts', '2')
        self.assertIn(code, (ExitCode.OK, ExitCode.ASSUMPTION_FAILURE))
        doc = read_artifact(self.path('invariance.json'))
        self.assertEqual([e['dt'] for e in doc['ladder']], [1e-2, 1e-3])
        self.assertEqual(len(doc['starts']), 2)
        self.assertEqual(doc['n_paths'], 40)
        self.assertEqual(summary['exit_fraction'], doc['exit_fraction'])


class SpectralCommandsTestCase(TempDirTestCase):

    def test_eigen_and_plot(self):
        code, summary = run_json('--out-dir', self.tmp, 'eigen', 'rect-1x2', '--h', '0.2',
                                 '--levels', '2', '--k', '4')
        self.assertEqual(code, ExitCode.OK)
        self.assertEqual(summary['multiplicity'], 'simple')
        self.assertAlmostEqual(summary['mu2'] / (3.141592653589793 ** 2 / 4), 1.0, delta=0.02)
        doc = read_artifact(self.path('eigen.json'))
        self.assertEqual(len(doc['field']['psi']), doc['mesh']['n_vertices'])
        _, header, rows = read_csv(self.path('eigenvector.csv'))
        self.assertEqual(header, ['x', 'y', 'psi'])
        self.assertEqual(len(rows), doc['mesh']['n_vertices'])

        code, _ = run_cli('plot', self.path('eigen.json'), self.path('eigen.svg'))
        self.assertEqual(code, ExitCode.OK)
        with open(self.path('eigen.svg')) as f:
            svg = f.read()
        self.assertIn('steelblue', svg)
        self.assertIn('firebrick', svg)

    def test_square_is_not_simple(self):
        code, summary = run_json('--out-dir', self.tmp, 'eigen', 'square', '--h', '0.1',
                                 '--levels', '2', '--k', '4')
        self.assertIn(code, (ExitCode.ASSUMPTION_FAILURE, ExitCode.UNRESOLVED))
        self.assertNotEqual(summary['multiplicity'], 'simple')

    def test_analyze_hot_spots(self):
        code, summary = run_json('--out-dir', self.tmp, 'analyze', 'rect-1x2', '--h', '0.2',
                                 '--levels', '2', '--no-lyapunov')
        self.assertEqual(code, ExitCode.OK)
        self.assertTrue(summary['hot_spots'])
        doc = read_artifact(self.path('analyze.json'))
        self.assertEqual(doc['verdict'], Verdict.PASS)
        self.assertGreater(len(doc['nodal_segments']), 0)
        code, _ = run_cli('plot', self.path('analyze.json'), self.path('nodal.svg'))
        self.assertEqual(code, ExitCode.OK)

    def test_heat_check_at_time_zero(self):
        code, summary = run_json('--out-dir', self.tmp, 'heat-check', 'disk', '--time', '0',
                                 '--paths', '10')
        self.assertEqual(code, ExitCode.OK)
        self.assertEqual(summary['max_difference'], 0.0)
        doc = read_artifact(self.path('heat-check.json'))
        self.assertEqual(len(doc['rows']), 5)

    def test_unplottable(self):
        run_cli('--out-dir', self.tmp, 'heat-check', 'disk', '--time', '0', '--paths', '10')
        code, summary = run_json('plot', self.path('heat-check.json'), self.path('x.svg'))
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        self.assertEqual(summary['error'], 'UnknownArtifactKind')


class PipelineTestCase(TempDirTestCase):

    def test_disk(self):
        code, summary = run_json('--out-dir', self.tmp, 'pipeline', 'disk', '--h', '0.15',
                                 '--levels', '2', '--k', '4', '--skip-invariance')
        self.assertEqual(code, ExitCode.ASSUMPTION_FAILURE)
        table = read_artifact(self.path('pipeline.json'))
        stages = {s['stage']: s for s in table['stages']}
        self.assertEqual(stages['special-points']['verdict'], Verdict.FAIL)
        self.assertEqual(stages['assumptions']['verdict'], Verdict.FAIL)
        self.assertNotIn('lyapunov', stages)
        self.assertNotEqual(stages['eigen']['multiplicity'], 'simple')
        self.assertEqual(stages['analyze']['verdict'], Verdict.SKIPPED)
        self.assertEqual(table['verdict'], Verdict.FAIL)
        eigen = read_artifact(self.path('eigen.json'))
        # the table quotes the stage artifact
        self.assertEqual(stages['eigen']['mu2'], eigen['richardson']['mu2'])
        self.assertEqual(eigen['manifest'], table['manifest'])
