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

import collections
import logging
import math
from functools import cached_property

import numpy as np

from neumirror.geometry.models import LineRepr, Vec2
from neumirror.hinges.exceptions import NotAdmissible

logger = logging.getLogger(__name__)


class Chord(object):
    """
    Oriented segment [P, Q] between two boundary points.

    p points from P to Q, m = -i p, and angle is the direction of p, which lies in
    [0, pi) whenever Q sits above P.
    """

    def __init__(self, curve, s_P, s_Q):
        self.curve = curve
        L = curve.total_length
        self.s_P = float(s_P) % L
        self.s_Q = float(s_Q) % L
        self.P = Vec2.of(curve.point_at(self.s_P))
        self.Q = Vec2.of(curve.point_at(self.s_Q))
        d = self.Q - self.P
        self.length = d.norm()
        if self.length <= 0:
            raise NotAdmissible('Chord endpoints coincide at {0}'.format(self.P))
        self.p = d * (1.0 / self.length)
        self.m = Vec2(self.p.y, -self.p.x)
        self.angle = math.atan2(self.p.y, self.p.x)

    @property
    def line(self):
        return LineRepr(self.angle, self.P)

    def side(self, points):
        """
        cross(p, A - P): positive on the left of the chord.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        r = points - np.asarray(self.P)
        return self.p.x * r[:, 1] - self.p.y * r[:, 0]

    def offset_R(self, s):
        """
        Counterclockwise arclength from P, so the right boundary is (0, offset_R(Q)).
        """
        return np.mod(np.asarray(s) - self.s_P, self.curve.total_length)

    @property
    def right_length(self):
        return float(self.offset_R(self.s_Q))

    def to_dict(self):
        return {
            's_P': self.s_P,
            's_Q': self.s_Q,
            'P': self.P.to_list(),
            'Q': self.Q.to_list(),
            'angle': self.angle,
        }

    def __repr__(self):
        return 'Chord(P=({0:.6g}, {1:.6g}), Q=({2:.6g}, {3:.6g}), angle={4:.6g})'.format(
            self.P.x, self.P.y, self.Q.x, self.Q.y, self.angle)


class Hinge(collections.namedtuple('Hinge', ['s_A', 'A', 'H', 'side', 'level', 'd', 'tau'])):
    """
    An active boundary point A together with the point H where its tangent meets the
    mirror line.  tau is the position of H along the chord, measured from P.
    """
    __slots__ = ()

    def to_dict(self):
        return {
            's_A': self.s_A,
            'A': self.A.to_list(),
            'H': self.H.to_list(),
            'side': self.side,
            'level': self.level,
            'd': self.d,
        }


HingeInterval = collections.namedtuple('HingeInterval', [
    's_from', 's_to', 'active', 'exists', 'side', 'level',
])


class SpecialPoints(object):
    """
    Named boundary points of a domain for a given alpha, stored as arclengths.

    Primed names carry a trailing quote.  The mirrored view swaps plain and primed
    names and lives on the mirrored curve, so every primed construction can be run
    as a plain one there.
    """
    BASE_NAMES = ('P1', 'P3', 'P4', 'P6', 'Q1', 'Q3', 'Q4', 'Q6')
    LYAPUNOV_NAMES = ('P2', 'P5', 'Q2', 'Q5')

    def __init__(self, curve, alpha, arclengths, mirror=None):
        self.curve = curve
        self.alpha = float(alpha)
        self.alpha_primed = math.pi - self.alpha
        self.arclengths = dict(arclengths)
        self._mirror = mirror

        L = curve.total_length
        self.ubar1 = float((self.arclengths["P1'"] - self.arclengths['P1']) % L)
        self.ubar2 = float((self.arclengths["Q6'"] - self.arclengths['Q6']) % L)

    @staticmethod
    def swap_prime(name):
        return name[:-1] if name.endswith("'") else name + "'"

    def s(self, name):
        return self.arclengths[name]

    def point(self, name):
        return Vec2.of(self.curve.point_at(self.arclengths[name]))

    def has(self, name):
        return name in self.arclengths

    def with_points(self, **arclengths):
        """
        A copy with extra names filled in; keyword names use `_p` for a prime.
        """
        values = dict(self.arclengths)
        for k, v in arclengths.items():
            values[k.replace('_p', "'")] = float(v) % self.curve.total_length
        return SpecialPoints(self.curve, self.alpha, values)

    @cached_property
    def mirrored(self):
        if self._mirror is not None:
            return self._mirror
        L = self.curve.total_length
        values = {self.swap_prime(k): (L - v) % L for k, v in self.arclengths.items()}
        return SpecialPoints(self.curve.mirrored(), self.alpha, values, mirror=self)

    def u1_of(self, s_P):
        return float((s_P - self.arclengths['P1']) % self.curve.total_length)

    def u2_of(self, s_Q):
        return float((self.arclengths["Q6'"] - s_Q) % self.curve.total_length)

    def s_P_of(self, u1):
        return (self.arclengths['P1'] + u1) % self.curve.total_length

    def s_Q_of(self, u2):
        return (self.arclengths["Q6'"] - u2) % self.curve.total_length

    def u_of(self, name):
        """
        Chart coordinate of a named point along its own boundary part.
        """
        if name.startswith('P'):
            return self.u1_of(self.arclengths[name])
        return self.u2_of(self.arclengths[name])

    def chord(self, p_name, q_name):
        return Chord(self.curve, self.arclengths[p_name], self.arclengths[q_name])

    def to_dict(self):
        points = {}
        for name, s in sorted(self.arclengths.items()):
            points[name] = {'s': s, 'xy': self.point(name).to_list()}
        return {
            'alpha': self.alpha,
            'alpha_primed': self.alpha_primed,
            'ubar1': self.ubar1,
            'ubar2': self.ubar2,
            'total_length': self.curve.total_length,
            'points': points,
        }
