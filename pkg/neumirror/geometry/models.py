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
from scipy import integrate, optimize

from neumirror.core.constants import PieceKind, TWO_PI
from neumirror.core.options import Tolerances
from neumirror.core.utils import stable_hash
from neumirror.geometry.exceptions import DegeneratePiece, InvalidVector
from neumirror.geometry.oracle import BoundaryOracle

logger = logging.getLogger(__name__)

# scipy refuses a brentq rtol below 4 eps
BRENTQ_RTOL = 4 * np.finfo(float).eps


class Vec2(collections.namedtuple('Vec2', ['x', 'y'])):
    """
    An immutable planar vector.  Arithmetic is componentwise, and numpy accepts it
    anywhere a length-2 sequence is expected.
    """
    __slots__ = ()

    def __new__(cls, x, y):
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidVector('Got ({0}, {1})'.format(x, y))
        return super(Vec2, cls).__new__(cls, x, y)

    @classmethod
    def of(cls, value):
        return cls(value[0], value[1])

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __mul__(self, k):
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def dot(self, other):
        return self.x * other[0] + self.y * other[1]

    def cross(self, other):
        return self.x * other[1] - self.y * other[0]

    def norm(self):
        return math.hypot(self.x, self.y)

    def rotate90(self):
        return Vec2(-self.y, self.x)

    def to_list(self):
        return [self.x, self.y]


class LineRepr(object):
    """
    An unoriented line, stored as an angle in [0, pi) and an anchor point.

    p is the unit direction e^{i angle} and m = -i p its clockwise normal.
    """

    def __init__(self, angle, anchor):
        angle = float(angle) % math.pi
        # fmod can land on pi itself through rounding
        if angle >= math.pi:
            angle = 0.0
        self.angle = angle
        self.anchor = Vec2.of(anchor)

    @classmethod
    def through(cls, a, b):
        d = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
        return cls(math.atan2(d[1], d[0]), a)

    @property
    def p(self):
        return Vec2(math.cos(self.angle), math.sin(self.angle))

    @property
    def m(self):
        p = self.p
        return Vec2(p.y, -p.x)

    def side(self, point):
        """
        Positive to the left of p, negative to the right.
        """
        return self.p.cross(Vec2.of(point) - self.anchor)

    def __repr__(self):
        return 'LineRepr(angle={0!r}, anchor={1!r})'.format(self.angle, self.anchor)


class BoundaryPiece(object):
    """
    One analytic piece of the boundary, parametrized by local arclength in
    [0, length] and traversed counterclockwise.  All evaluators are vectorized.
    """
    kind = None
    length = 0.0

    def point(self, sig):
        raise NotImplementedError()

    def tangent(self, sig):
        raise NotImplementedError()

    def normal(self, sig):
        # inward normal is the tangent turned a quarter to the left
        t = self.tangent(sig)
        return np.stack([-t[..., 1], t[..., 0]], axis=-1)

    def curvature(self, sig):
        raise NotImplementedError()

    def normal_angle(self, sig):
        """
        Continuous (unwrapped) angle of the inward normal along the piece.
        """
        raise NotImplementedError()

    def sigma_of_normal_angle(self, angle):
        raise NotImplementedError()

    def sub(self, sig_from, sig_to):
        raise NotImplementedError()

    def mirrored(self):
        raise NotImplementedError()

    def to_dict(self):
        raise NotImplementedError()

    @property
    def start(self):
        return Vec2.of(self.point(np.array([0.0]))[0])

    @property
    def end(self):
        return Vec2.of(self.point(np.array([self.length]))[0])


def _wrapped_extent(angle_from, angle_to):
    angle_from = float(angle_from)
    angle_to = float(angle_to)
    if angle_to <= angle_from:
        angle_to += TWO_PI
    if angle_to - angle_from > TWO_PI * (1 + 1e-12):
        raise DegeneratePiece('Arc spans more than a full turn ({0} to {1})'.format(
            angle_from, angle_to))
    return angle_from, angle_to


class CircleArc(BoundaryPiece):
    kind = PieceKind.CIRCLE_ARC

    def __init__(self, center, radius, angle_from, angle_to):
        self.center = Vec2.of(center)
        self.radius = float(radius)
        if not self.radius > 0:
            raise DegeneratePiece('Circle radius must be positive, got {0}'.format(radius))
        self.angle_from, self.angle_to = _wrapped_extent(angle_from, angle_to)
        self.length = self.radius * (self.angle_to - self.angle_from)

    def _theta(self, sig):
        return self.angle_from + np.asarray(sig, dtype=float) / self.radius

    def point(self, sig):
        th = self._theta(sig)
        return np.stack([self.center.x + self.radius * np.cos(th),
                         self.center.y + self.radius * np.sin(th)], axis=-1)

    def tangent(self, sig):
        th = self._theta(sig)
        return np.stack([-np.sin(th), np.cos(th)], axis=-1)

    def curvature(self, sig):
        return np.full(np.shape(sig), 1.0 / self.radius)

    def normal_angle(self, sig):
        return self._theta(sig) + math.pi

    def sigma_of_normal_angle(self, angle):
        return (angle - math.pi - self.angle_from) * self.radius

    def sub(self, sig_from, sig_to):
        return CircleArc(self.center, self.radius,
                         self.angle_from + sig_from / self.radius,
                         self.angle_from + sig_to / self.radius)

    def mirrored(self):
        return CircleArc((-self.center.x, self.center.y), self.radius,
                         math.pi - self.angle_to, math.pi - self.angle_from)

    def to_dict(self):
        return {
            'kind': self.kind,
            'center': self.center.to_list(),
            'radius': self.radius,
            'from': self.angle_from,
            'to': self.angle_to,
        }


class EllipseArc(BoundaryPiece):
    """
    Axis-aligned elliptic arc (a cos t, b sin t) about `center`.

    Arclength is tabulated on TABLE_SIZE parameter intervals with Gauss-Legendre
    quadrature; the inverse map uses Newton started from the table.
    """
    kind = PieceKind.ELLIPSE_ARC

    TABLE_SIZE = 256
    GAUSS_ORDER = 16
    NEWTON_STEPS = 6

    def __init__(self, center, semi_axes, angle_from, angle_to):
        self.center = Vec2.of(center)
        self.a, self.b = float(semi_axes[0]), float(semi_axes[1])
        if not (self.a > 0 and self.b > 0):
            raise DegeneratePiece('Ellipse semi-axes must be positive, got {0}'.format(
                semi_axes))
        self.angle_from, self.angle_to = _wrapped_extent(angle_from, angle_to)

        self._gauss_x, self._gauss_w = np.polynomial.legendre.leggauss(self.GAUSS_ORDER)
        self._t_nodes = np.linspace(self.angle_from, self.angle_to, self.TABLE_SIZE + 1)
        pieces = self._integrate(self._t_nodes[:-1], self._t_nodes[1:])
        self._s_nodes = np.concatenate([[0.0], np.cumsum(pieces)])
        self.length = float(self._s_nodes[-1])

        check, _ = integrate.quad(self._speed, self.angle_from, self.angle_to,
                                  epsabs=0.0, epsrel=1e-12, limit=200)
        if abs(check - self.length) > 1e-9 * self.length:
            logger.warning('Ellipse arclength table disagrees with adaptive quadrature: '
                           '%r vs %r', self.length, check)

    def _speed(self, t):
        return np.hypot(self.a * np.sin(t), self.b * np.cos(t))

    def _integrate(self, t0, t1):
        t0 = np.asarray(t0, dtype=float)[..., None]
        t1 = np.asarray(t1, dtype=float)[..., None]
        half = 0.5 * (t1 - t0)
        nodes = 0.5 * (t1 + t0) + half * self._gauss_x
        return np.sum(self._speed(nodes) * self._gauss_w, axis=-1) * half[..., 0]

    def arclength(self, t):
        t = np.asarray(t, dtype=float)
        j = np.clip(np.searchsorted(self._t_nodes, t, side='right') - 1,
                    0, self.TABLE_SIZE - 1)
        return self._s_nodes[j] + self._integrate(self._t_nodes[j], t)

    def parameter(self, sig):
        sig = np.asarray(sig, dtype=float)
        t = np.interp(sig, self._s_nodes, self._t_nodes)
        for _ in range(self.NEWTON_STEPS):
            t = t - (self.arclength(t) - sig) / self._speed(t)
            t = np.clip(t, self.angle_from, self.angle_to)
        return t

    def point(self, sig):
        t = self.parameter(sig)
        return np.stack([self.center.x + self.a * np.cos(t),
                         self.center.y + self.b * np.sin(t)], axis=-1)

    def tangent(self, sig):
        t = self.parameter(sig)
        sp = self._speed(t)
        return np.stack([-self.a * np.sin(t) / sp, self.b * np.cos(t) / sp], axis=-1)

    def curvature(self, sig):
        t = self.parameter(sig)
        return self.a * self.b / self._speed(t) ** 3

    def _normal_angle_of_t(self, t):
        s, c = np.sin(t), np.cos(t)
        return math.pi + t + np.arctan((self.a - self.b) * s * c /
                                       (self.b * c * c + self.a * s * s))

    def normal_angle(self, sig):
        return self._normal_angle_of_t(self.parameter(sig))

    def sigma_of_normal_angle(self, angle):
        t = optimize.brentq(lambda x: self._normal_angle_of_t(x) - angle,
                            self.angle_from, self.angle_to, xtol=1e-15, rtol=BRENTQ_RTOL)
        return float(self.arclength(t))

    def sub(self, sig_from, sig_to):
        t0, t1 = self.parameter(np.array([sig_from, sig_to]))
        return EllipseArc(self.center, (self.a, self.b), t0, t1)

    def mirrored(self):
        return EllipseArc((-self.center.x, self.center.y), (self.a, self.b),
                          math.pi - self.angle_to, math.pi - self.angle_from)

    def to_dict(self):
        return {
            'kind': self.kind,
            'center': self.center.to_list(),
            'semi_axes': [self.a, self.b],
            'from': self.angle_from,
            'to': self.angle_to,
        }


class Segment(BoundaryPiece):
    kind = PieceKind.SEGMENT

    def __init__(self, start, end):
        self.p0 = Vec2.of(start)
        self.p1 = Vec2.of(end)
        self.length = (self.p1 - self.p0).norm()
        if not self.length > 0:
            raise DegeneratePiece('Segment endpoints coincide at {0}'.format(self.p0))
        self.direction = (self.p1 - self.p0) * (1.0 / self.length)

    def point(self, sig):
        sig = np.asarray(sig, dtype=float)[..., None]
        return np.asarray(self.p0) + sig * np.asarray(self.direction)

    def tangent(self, sig):
        return np.broadcast_to(np.asarray(self.direction),
                               np.shape(sig) + (2,)).copy()

    def curvature(self, sig):
        return np.zeros(np.shape(sig))

    def normal_angle(self, sig):
        return np.full(np.shape(sig), math.atan2(self.direction.x, -self.direction.y))

    def sigma_of_normal_angle(self, angle):
        # every point of the segment shares the normal
        return 0.0

    def sub(self, sig_from, sig_to):
        return Segment(self.point(sig_from), self.point(sig_to))

    def mirrored(self):
        return Segment((-self.p1.x, self.p1.y), (-self.p0.x, self.p0.y))

    def to_dict(self):
        return {
            'kind': self.kind,
            'from': self.p0.to_list(),
            'to': self.p1.to_list(),
        }


PIECE_CLASSES = {
    PieceKind.CIRCLE_ARC: CircleArc,
    PieceKind.ELLIPSE_ARC: EllipseArc,
    PieceKind.SEGMENT: Segment,
}


class BoundaryCurve(object):
    """
    A closed convex curve made of analytic pieces, parametrized by arclength s in
    [0, total_length).  Immutable; every evaluator takes scalars or arrays of s and
    reads s modulo the total length.

    At a joint the piece starting there is used, so vector queries are right-sided.
    The single-point helpers in `neumirror.geometry.utils` report corners instead.
    """

    def __init__(self, pieces, tolerances=None, oracle_points=8192):
        self.pieces = tuple(pieces)
        if not self.pieces:
            raise DegeneratePiece('Empty piece list')
        self.tolerances = tolerances or Tolerances()
        self.oracle_points = int(oracle_points)

        lengths = np.array([p.length for p in self.pieces])
        self.cumulative_lengths = np.concatenate([[0.0], np.cumsum(lengths)])
        self.total_length = float(self.cumulative_lengths[-1])
        self._offsets, self.corner_turns = self._unwrap_normal_angles()

    def __len__(self):
        return len(self.pieces)

    def _unwrap_normal_angles(self):
        """
        Shift every piece's normal angle by a multiple of 2pi so the curve's normal
        angle is nondecreasing.  corner_turns[k] is the jump at the start of piece k.
        """
        offsets = np.zeros(len(self.pieces))
        turns = np.zeros(len(self.pieces))
        prev_end = None
        for k, piece in enumerate(self.pieces):
            a = float(piece.normal_angle(np.array([0.0]))[0])
            if prev_end is not None:
                turns[k] = _turn(prev_end, a)
                offsets[k] = prev_end + turns[k] - a
            prev_end = float(piece.normal_angle(np.array([piece.length]))[0]) + offsets[k]
        first = float(self.pieces[0].normal_angle(np.array([0.0]))[0])
        turns[0] = _turn(prev_end, first)
        return offsets, turns

    @property
    def total_turning(self):
        last = self.pieces[-1]
        end = float(last.normal_angle(np.array([last.length]))[0]) + self._offsets[-1]
        start = float(self.pieces[0].normal_angle(np.array([0.0]))[0])
        return end - start + self.corner_turns[0]

    def _split(self, s):
        s = np.mod(np.asarray(s, dtype=float), self.total_length)
        s = np.where(s >= self.total_length, 0.0, s)
        idx = np.searchsorted(self.cumulative_lengths[1:-1], s, side='right')
        return idx, s - self.cumulative_lengths[idx]

    def _evaluate(self, s, method, width=None):
        scalar = np.ndim(s) == 0
        idx, sig = self._split(np.atleast_1d(s))
        shape = sig.shape + ((width,) if width else ())
        out = np.empty(shape)
        for k in np.unique(idx):
            mask = idx == k
            out[mask] = getattr(self.pieces[k], method)(sig[mask])
        return out[0] if scalar else out

    def point_at(self, s):
        return self._evaluate(s, 'point', 2)

    def tangent_at(self, s):
        return self._evaluate(s, 'tangent', 2)

    def normal_at(self, s):
        return self._evaluate(s, 'normal', 2)

    def curvature_at(self, s):
        return self._evaluate(s, 'curvature')

    def normal_angle_at(self, s):
        """
        Unwrapped normal angle, nondecreasing on [0, total_length).
        """
        scalar = np.ndim(s) == 0
        idx, sig = self._split(np.atleast_1d(s))
        out = np.empty(sig.shape)
        for k in np.unique(idx):
            mask = idx == k
            out[mask] = self.pieces[k].normal_angle(sig[mask]) + self._offsets[k]
        return out[0] if scalar else out

    def piece_normal_ranges(self):
        """
        (start, end) unwrapped normal angle per piece.
        """
        ranges = []
        for k, piece in enumerate(self.pieces):
            ends = piece.normal_angle(np.array([0.0, piece.length])) + self._offsets[k]
            ranges.append((float(ends[0]), float(ends[1])))
        return ranges

    def joint_s(self):
        return self.cumulative_lengths[:-1].copy()

    @cached_property
    def corner_indices(self):
        """
        Joints where the tangent jumps.
        """
        return [k for k in range(len(self.pieces))
                if self.corner_turns[k] > self.tolerances.angle]

    @property
    def corner_s(self):
        return self.cumulative_lengths[self.corner_indices]

    def arc_length_between(self, s_from, s_to):
        """
        Counterclockwise arclength from s_from to s_to.
        """
        return np.mod(np.asarray(s_to) - np.asarray(s_from), self.total_length)

    def sample(self, n):
        s = np.linspace(0.0, self.total_length, int(n), endpoint=False)
        return s, self.point_at(s)

    @cached_property
    def oracle(self):
        return BoundaryOracle(self, n_points=self.oracle_points)

    @cached_property
    def diameter(self):
        return self.oracle.diameter

    @cached_property
    def width(self):
        return self.oracle.width

    @cached_property
    def area(self):
        # Green's theorem on the exact pieces: 1/2 of the integral of C x T ds
        total = 0.0
        for piece in self.pieces:
            def integrand(sig, piece=piece):
                c = piece.point(np.array([sig]))[0]
                t = piece.tangent(np.array([sig]))[0]
                return c[0] * t[1] - c[1] * t[0]
            value, _ = integrate.quad(integrand, 0.0, piece.length, epsabs=1e-13, limit=200)
            total += 0.5 * value
        return total

    @property
    def tol_close(self):
        return self.tolerances.close * self.diameter

    @property
    def tol_root(self):
        return self.tolerances.root * self.diameter

    @property
    def tol_boundary(self):
        return self.tolerances.boundary * self.diameter

    def mirrored(self):
        """
        The image under x -> -x, still counterclockwise.  A point at s here sits at
        total_length - s on the mirrored curve.
        """
        pieces = [piece.mirrored() for piece in reversed(self.pieces)]
        return BoundaryCurve(pieces, tolerances=self.tolerances,
                             oracle_points=self.oracle_points)

    def to_dict(self):
        return {'pieces': [piece.to_dict() for piece in self.pieces]}

    @cached_property
    def domain_hash(self):
        return stable_hash(self.to_dict())

    def __repr__(self):
        return 'BoundaryCurve({0} pieces, L={1:.6g})'.format(len(self.pieces),
                                                             self.total_length)


def _turn(angle_end, angle_start):
    """
    Counterclockwise jump in [0, 2pi) between consecutive normal angles.
    """
    turn = (angle_start - angle_end) % TWO_PI
    if turn > TWO_PI - 1e-9:
        turn = 0.0
    return turn
