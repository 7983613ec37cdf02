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

from neumirror.assumptions.models import AssumptionReport, AssumptionResult
from neumirror.assumptions.utils import ASSUMPTIONS, _line_intersections, run_all, scan_alpha
from neumirror.core.constants import ExitCode, Verdict
from neumirror.core.options import Sampling
from neumirror.core.tests.utils import NeumirrorTestCase
from neumirror.hinges.models import Chord

logger = logging.getLogger(__name__)


class AssumptionResultTestCase(NeumirrorTestCase):

    def test_fail_needs_witness(self):
        with self.assertRaises(ValueError):
            AssumptionResult('A1', Verdict.FAIL)

    def test_invalid_verdict(self):
        with self.assertRaises(ValueError):
            AssumptionResult('A1', 'probably')

    def test_to_dict(self):
        result = AssumptionResult.passed('A2', 12, nu_found=0.01)
        self.assertEqual(result.to_dict(), {'verdict': 'pass', 'checked': 12, 'nu_found': 0.01})
        result = AssumptionResult.failed('A4', {'s': 1.0}, 'tangential')
        self.assertEqual(result.to_dict()['witness'], {'s': 1.0})
        self.assertEqual(result.to_dict()['reason'], 'tangential')

    def test_report_verdict(self):
        passed = AssumptionResult.passed('A1', 1)
        skipped = AssumptionResult.skipped('A5', 'empty')
        failed = AssumptionResult.failed('A3', {'s': 0.0}, 'bad')

        report = AssumptionReport(0.5, [passed], {})
        self.assertEqual(report.exit_code, ExitCode.OK)
        report = AssumptionReport(0.5, [passed, skipped], {})
        self.assertEqual(report.exit_code, ExitCode.UNRESOLVED)
        report = AssumptionReport(0.5, [passed, skipped, failed], {})
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertEqual(report.exit_code, ExitCode.ASSUMPTION_FAILURE)
        self.assertIs(report['A3'], failed)
        self.assertEqual(list(report.to_dict()['assumptions']), ['A1', 'A5', 'A3'])


class LineIntersectionTestCase(NeumirrorTestCase):
    presets = ('square',)

    def test_pairwise(self):
        square = self.curves['square']
        vertical = Chord(square, 0.5, 2.5)
        horizontal = Chord(square, 3.75, 1.25)
        pts = _line_intersections([vertical], [horizontal, vertical])
        self.assertEqual(pts.shape, (1, 2, 2))
        self.assertVecAlmostEqual(pts[0, 0], (0.5, 0.25), tol=1e-12)
        self.assertTrue(np.all(np.isnan(pts[0, 1])))


class DiskReportTestCase(NeumirrorTestCase):
    presets = ('disk',)

    def test_all_fail_with_witness(self):
        report = run_all(self.curves['disk'], math.pi / 4)
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertEqual(list(report.results), list(ASSUMPTIONS))
        for name in ASSUMPTIONS:
            witness = report[name].witness
            self.assertEqual(witness['error'], 'OrientationViolated')
            self.assertEqual(witness['exit_code'], ExitCode.ASSUMPTION_FAILURE)
        self.assertEqual(report.domain_hash, self.curves['disk'].domain_hash)

    def test_scan_alpha(self):
        rows = scan_alpha(self.curves['disk'], [0.3, 0.6], sampling=Sampling(hinge_scan=200))
        self.assertEqual([r['alpha'] for r in rows], [0.3, 0.6])
        for row in rows:
            self.assertEqual(row['verdict'], Verdict.FAIL)
            self.assertEqual(row['failed'], list(ASSUMPTIONS))
