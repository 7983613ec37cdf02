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
import unittest
from unittest.util import safe_repr

import numpy as np

from neumirror.hinges.special import compute_special_points
from neumirror.lyapunov.utils import assemble
from neumirror.management.presets import load_preset

logger = logging.getLogger(__name__)

_CURVES = {}
_SPECIALS = {}
_LYAPUNOV = {}


def preset_curve(name):
    """
    (curve, alpha) for a preset, built once per test session.
    """
    if name not in _CURVES:
        _CURVES[name] = load_preset(name)
    return _CURVES[name]


def preset_special(name='example1'):
    if name not in _SPECIALS:
        curve, alpha = preset_curve(name)
        _SPECIALS[name] = compute_special_points(curve, alpha)
    return _SPECIALS[name]


def preset_lyapunov(name='example1'):
    if name not in _LYAPUNOV:
        curve, _ = preset_curve(name)
        _LYAPUNOV[name] = assemble(curve, preset_special(name))
    return _LYAPUNOV[name]


class NeumirrorTestCase(unittest.TestCase):
    """
    Base test case.  Subclasses list the presets they need in `presets`; the curves
    are available as `self.curves[name]` and the alphas as `self.alphas[name]`.
    """
    presets = ()

    @classmethod
    def setUpClass(cls):
        super(NeumirrorTestCase, cls).setUpClass()
        cls.curves = {}
        cls.alphas = {}
        for name in cls.presets:
            cls.curves[name], cls.alphas[name] = preset_curve(name)

    def assertVecAlmostEqual(self, first, second, tol=1e-9, msg=None):
        """
        Componentwise |first - second| <= tol for points or arrays of points.
        """
        a = np.asarray(first, dtype=float)
        b = np.asarray(second, dtype=float)
        if a.shape != b.shape or not np.all(np.abs(a - b) <= tol):
            standardMsg = '%s != %s within %s' % (safe_repr(a.tolist()), safe_repr(b.tolist()),
                                                  tol)
            self.fail(self._formatMessage(msg, standardMsg))

    def assertBetween(self, value, lower, upper, msg=None):
        if not lower < value < upper:
            standardMsg = '%s not in (%s, %s)' % (safe_repr(value), lower, upper)
            self.fail(self._formatMessage(msg, standardMsg))
