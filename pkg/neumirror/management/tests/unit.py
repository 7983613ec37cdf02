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

import io
import json
import logging
import math
import os
import shutil
import tempfile

import numpy as np
from mock import Mock, patch

from neumirror.core.constants import ExitCode, Multiplicity, Verdict
from neumirror.core.exceptions import InputError
from neumirror.core.tests.utils import NeumirrorTestCase
from neumirror.geometry.exceptions import NotConvex
from neumirror.management import build_parser, commands
from neumirror.management.exceptions import UnknownArtifactKind
from neumirror.management.models import RunManifest
from neumirror.management.plotting import Viewport, _finite_paths, plot_chart, render_artifact
from neumirror.management.tests.utils import SQUARE_DOC, run_cli, run_json, write_doc
from neumirror.management.utils import (
    artifact_document,
    jsonable,
    read_artifact,
    read_csv,
    write_csv,
    write_json,
)

logger = logging.getLogger(__name__)


class TempDirTestCase(NeumirrorTestCase):

    def setUp(self):
        super(TempDirTestCase, self).setUp()
        self.tmp = tempfile.mkdtemp(prefix='neumirror-test-')

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)
        super(TempDirTestCase, self).tearDown()

    def path(self, name):
        return os.path.join(self.tmp, name)


class RunManifestTestCase(NeumirrorTestCase):

    def manifest(self, **kwargs):
        values = {'command': 'eigen', 'arguments': {'domain': 'disk', 'h': 0.1},
                  'config': {'spectral': {'levels': 3}}, 'seed': 7}
        values.update(kwargs)
        return RunManifest(**values)

    def test_id_covers_inputs_only(self):
        first = self.manifest()
        second = self.manifest()
        second.started = '1970-01-01T00:00:00+00:00'
        second.add_output('eigen.json', 'eigen')
        self.assertEqual(first.id, second.id)
        self.assertEqual(len(first.id), 16)

    def test_id_changes_with_inputs(self):
        base = self.manifest().id
        self.assertNotEqual(self.manifest(seed=8).id, base)
        self.assertNotEqual(self.manifest(arguments={'domain': 'disk', 'h': 0.2}).id, base)
        changed = self.manifest()
        changed.domain_hash = 'abc'
        self.assertNotEqual(changed.id, base)

    def test_to_dict(self):
        manifest = self.manifest()
        manifest.add_output('out/eigen.json', 'eigen')
        self.assertIsNone(manifest.to_dict()['finished'])
        manifest.finish()
        doc = manifest.to_dict()
        self.assertEqual(doc['id'], manifest.id)
        self.assertEqual(doc['outputs'], [{'path': 'out/eigen.json', 'kind': 'eigen'}])
        self.assertIsNotNone(doc['finished'])
        self.assertEqual(doc['seed'], 7)


class JsonableTestCase(NeumirrorTestCase):

    def test_numpy_values(self):
        doc = jsonable({
            'a': np.arange(3),
            'b': np.float64(0.5),
            'c': np.bool_(True),
            'd': (np.int32(4), [np.nan, np.inf]),
            1: None,
        })
        self.assertEqual(doc, {'a': [0, 1, 2], 'b': 0.5, 'c': True, 'd': [4, [None, None]],
                               '1': None})
        self.assertIs(type(doc['a'][0]), int)
        json.dumps(doc)

    def test_artifact_document(self):
        doc = artifact_document('eigen', 'abc', {'mu': np.array([0.0, 1.5])})
        self.assertEqual(doc, {'mu': [0.0, 1.5], 'kind': 'eigen', 'manifest': 'abc'})
        with self.assertRaises(UnknownArtifactKind):
            artifact_document('histogram', 'abc', {})


class ArtifactIOTestCase(TempDirTestCase):

    def test_json_is_canonical(self):
        a = write_json(self.path('a.json'), {'b': 1.0, 'a': {'z': 1, 'y': [1, 2]}})
        b = write_json(self.path('b.json'), {'a': {'y': [1, 2], 'z': 1}, 'b': 1.0})
        with open(a) as fa, open(b) as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_csv(self):
        rows = [['t', 'u1', 'u2'], [0.0, 0.1, float('nan')], [0.5, 1.0 / 3.0, 2.0]]
        path = write_csv(self.path('path.csv'), rows, 'abc123')
        with open(path) as f:
            self.assertEqual(f.readline(), '# manifest=abc123\n')
        manifest_id, header, values = read_csv(path)
        self.assertEqual(manifest_id, 'abc123')
        self.assertEqual(header, ['t', 'u1', 'u2'])
        self.assertEqual(values[1, 1], 1.0 / 3.0)
        self.assertTrue(math.isnan(values[0, 2]))

        doc = read_artifact(path)
        self.assertEqual(doc['kind'], 'coupling')
        self.assertEqual(doc['manifest'], 'abc123')

    def test_read_errors(self):
        with self.assertRaises(InputError):
            read_artifact(self.path('missing.json'))
        write_doc(self.path('plain.json'), {'mu': [1.0]})
        with self.assertRaises(UnknownArtifactKind):
            read_artifact(self.path('plain.json'))
        with open(self.path('bad.json'), 'w') as f:
            f.write('{not json')
        with self.assertRaises(InputError):
            read_artifact(self.path('bad.json'))
        write_csv(self.path('other.csv'), [['x', 'y', 'psi'], [0.0, 0.0, 1.0]], 'abc')
        with self.assertRaises(UnknownArtifactKind):
            read_artifact(self.path('other.csv'))


class PlottingTestCase(NeumirrorTestCase):

    def lyapunov_doc(self):
        return {
            'kind': 'lyapunov',
            'manifest': 'abc',
            'ubar': [2.0, 1.0],
            'arcs': {'a': [[0.5, 0.2], [1.5, 0.2]], 'b': [[1.5, 0.2], [1.0, 0.8]],
                     'c': [[1.0, 0.8], [0.5, 0.2]]},
            'corners': {'u2': [0.5, 0.2]},
        }

    def test_viewport(self):
        view = Viewport([[0, 0], [2, 1]], width=100, margin=10)
        self.assertEqual(view.scale, 40.0)
        self.assertEqual(view.height, 60)
        # y axis points up
        self.assertVecAlmostEqual(view.xy([[0, 0], [2, 1]]), [[10, 50], [90, 10]])
        self.assertEqual(view.points([[0, 0]]), '10.00,50.00')

    def test_finite_paths(self):
        u = [[0, 0], [1, 1], [np.nan, np.nan], [2, 2], [3, 3], [4, 4], [np.nan, 0]]
        paths = _finite_paths(u)
        self.assertEqual([len(p) for p in paths], [2, 3])

    def test_chart(self):
        svg = plot_chart(lyapunov=self.lyapunov_doc())
        self.assertTrue(svg.startswith('<?xml'))
        self.assertIn('<polygon', svg)
        self.assertIn('manifest abc', svg)
        self.assertIn('>u2<', svg)

    def test_chart_overlay(self):
        coupling = {'kind': 'coupling', 'manifest': 'def', 'columns': ['t', 'u1', 'u2'],
                    'rows': [[0.0, 1.0, 0.5], [0.1, 1.1, 0.5], [0.2, 1.2, 0.4]]}
        svg = render_artifact(coupling, overlay=self.lyapunov_doc())
        self.assertIn('<polyline', svg)
        self.assertIn('<polygon', svg)
        self.assertIn('manifest def', svg)

    def test_unknown_kinds(self):
        with self.assertRaises(UnknownArtifactKind):
            render_artifact({'kind': 'heat-check'})
        with self.assertRaises(UnknownArtifactKind):
            render_artifact(self.lyapunov_doc(), overlay={'kind': 'eigen'})


class VerdictTestCase(NeumirrorTestCase):

    def result(self, holds=True, fraction=1.0, violations=0.0, cone=1.0, with_t=True):
        ret = Mock()
        ret.hot_spots = {'holds': holds}
        if with_t:
            ret.monotonicity.fraction = fraction
            ret.sign = {'violation_fraction': violations}
            ret.gradient_cone = {'fraction': cone}
        else:
            ret.monotonicity = None
        return ret

    def test_multiplicity(self):
        self.assertEqual(commands.verdict_of_multiplicity(Multiplicity.SIMPLE), Verdict.PASS)
        self.assertEqual(commands.verdict_of_multiplicity(Multiplicity.DOUBLE), Verdict.FAIL)
        self.assertEqual(commands.verdict_of_multiplicity(Multiplicity.UNRESOLVED),
                         Verdict.SKIPPED)

    def test_analysis(self):
        self.assertEqual(commands.analysis_verdict(self.result()), Verdict.PASS)
        self.assertEqual(commands.analysis_verdict(self.result(with_t=False)), Verdict.PASS)
        self.assertEqual(commands.analysis_verdict(self.result(holds=False, with_t=False)),
                         Verdict.FAIL)
        self.assertEqual(commands.analysis_verdict(self.result(fraction=0.99)), Verdict.FAIL)
        self.assertEqual(commands.analysis_verdict(self.result(violations=0.01)), Verdict.FAIL)
        self.assertEqual(commands.analysis_verdict(self.result(cone=0.9)), Verdict.FAIL)


class ParserTestCase(TempDirTestCase):

    def test_global_flags(self):
        args = build_parser().parse_args(['--seed', '3', '--threads', '2', '--json',
                                          '--out-dir', 'out', 'eigen', 'disk', '--h', '0.1'])
        self.assertEqual(args.seed, 3)
        self.assertEqual(args.threads, 2)
        self.assertTrue(args.json)
        self.assertEqual(args.h, 0.1)
        self.assertIs(args.command, commands.EigenCommand)

    def test_subcommands(self):
        parser = build_parser()
        expected = {
            'validate': commands.ValidateCommand,
            'special-points': commands.SpecialPointsCommand,
            'check-assumptions': commands.CheckAssumptionsCommand,
            'lyapunov': commands.LyapunovCommand,
            'simulate': commands.SimulateCommand,
            'invariance': commands.InvarianceCommand,
            'eigen': commands.EigenCommand,
            'analyze': commands.AnalyzeCommand,
            'heat-check': commands.HeatCheckCommand,
            'pipeline': commands.PipelineCommand,
        }
        for name, cls in expected.items():
            self.assertIs(parser.parse_args([name, 'disk']).command, cls)
        self.assertIs(parser.parse_args(['plot', 'a.json', 'a.svg']).command,
                      commands.PlotCommand)

    def test_no_subcommand(self):
        with patch('sys.stderr', new_callable=io.StringIO):
            code, out = run_cli()
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        self.assertIn('usage', out)

    def test_open_polyline(self):
        doc = dict(SQUARE_DOC, pieces=SQUARE_DOC['pieces'][:3])
        code, out = run_json('--out-dir', self.tmp, 'validate', write_doc(self.path('d.json'), doc))
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        self.assertEqual(out['error'], 'NotClosed')
        self.assertEqual(out['exit_code'], 1)

    def test_reversed_orientation(self):
        pieces = [{'kind': 'segment', 'from': p['to'], 'to': p['from']}
                  for p in reversed(SQUARE_DOC['pieces'])]
        path = write_doc(self.path('d.json'), dict(SQUARE_DOC, pieces=pieces))
        code, out = run_json('--out-dir', self.tmp, 'validate', path)
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        self.assertEqual(out['error'], NotConvex.__name__)

    def test_unknown_domain(self):
        with patch('sys.stderr', new_callable=io.StringIO) as stderr:
            code, out = run_cli('--out-dir', self.tmp, 'validate', 'no-such-domain')
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        self.assertEqual(out, '')
        self.assertTrue(stderr.getvalue().startswith('ERROR: '))
        self.assertIn('no-such-domain', stderr.getvalue())

    def test_config(self):
        code, out = run_cli('config')
        self.assertEqual(code, ExitCode.OK)
        config = json.loads(out)
        self.assertEqual(config['spectral']['levels'], 3)
        self.assertIn('tolerances', config)

    def test_init(self):
        target = self.path('home/neumirror.yaml')
        with patch.object(commands.InitCommand, 'CONFIG_FILE', target):
            code, _ = run_cli('init')
            self.assertEqual(code, ExitCode.OK)
            self.assertTrue(os.path.isfile(target))
            with open(target, 'w') as f:
                f.write('log_level: debug\n')
            run_cli('init')
            with open(target) as f:
                self.assertEqual(f.read(), 'log_level: debug\n')
            run_cli('init', '--force')
            with open(target) as f:
                self.assertIn('simulation:', f.read())
