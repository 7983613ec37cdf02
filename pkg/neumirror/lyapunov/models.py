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
from functools import cached_property

import numpy as np

from neumirror.core.exceptions import InputError

logger = logging.getLogger(__name__)

ARC_LABELS = (
    'u2-u3',
    'u3-u4',
    'u4-u5',
    "u5-u2'",
    "u2'-u3'",
    "u3'-u4'",
    "u4'-u5'",
    "u5'-u2",
)


class UPoint(collections.namedtuple('UPoint', ['u1', 'u2'])):
    """
    A point of the rectangle [0, ubar1] x [0, ubar2].
    """
    __slots__ = ()

    @classmethod
    def checked(cls, u1, u2, ubar1, ubar2, tol=0.0):
        if not (-tol <= u1 <= ubar1 + tol and -tol <= u2 <= ubar2 + tol):
            raise InputError('({0:.6g}, {1:.6g}) is outside [0, {2:.6g}] x [0, {3:.6g}]'.format(
                u1, u2, ubar1, ubar2))
        return cls(float(u1), float(u2))

    def to_list(self):
        return [self.u1, self.u2]


def segment_distances(points, a, b):
    """
    Distance from each of `points` (n x 2) to the nearest of the segments a[j] b[j].
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    d = b - a
    dd = np.maximum(np.einsum('ij,ij->i', d, d), 1e-300)
    r = points[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum('nij,ij->ni', r, d) / dd, 0.0, 1.0)
    foot = a[None, :, :] + t[..., None] * d[None, :, :]
    return np.min(np.linalg.norm(points[:, None, :] - foot, axis=2), axis=1)


class LyapunovSet(object):
    """
    Closed region of the chart bounded by eight arcs, stored as polylines.

    Each arc runs from its first corner to its second, so concatenating them in
    ARC_LABELS order traces the boundary once.
    """

    def __init__(self, arcs, corners, a_star, ubar, tol=1e-9, special=None):
        missing = [label for label in ARC_LABELS if label not in arcs]
        if missing:
            raise InputError('Missing arcs: {0}'.format(', '.join(missing)))
        self.arcs = collections.OrderedDict(
            (label, np.asarray(arcs[label], dtype=float)) for label in ARC_LABELS)
        self.corners = {k: UPoint(*v) for k, v in corners.items()}
        self.a_star = dict(a_star)
        self.ubar = tuple(float(v) for v in ubar)
        self.tol = float(tol)
        self.special = special

    @cached_property
    def loop(self):
        """
        Closed vertex list; the last vertex repeats the first.
        """
        parts = [arc if i == 0 else arc[1:] for i, arc in enumerate(self.arcs.values())]
        loop = np.concatenate(parts)
        if np.linalg.norm(loop[-1] - loop[0]) > 0:
            loop = np.vstack([loop, loop[:1]])
        return loop

    @property
    def closure_gap(self):
        """
        Largest mismatch between the end of one arc and the start of the next.
        """
        arcs = list(self.arcs.values())
        gaps = [np.linalg.norm(arcs[i][-1] - arcs[(i + 1) % len(arcs)][0])
                for i in range(len(arcs))]
        return float(max(gaps))

    @property
    def centroid(self):
        return np.mean(self.loop[:-1], axis=0)

    def _edges(self):
        return self.loop[:-1], self.loop[1:]

    def on_boundary(self, u):
        a, b = self._edges()
        return segment_distances(u, a, b) <= self.tol

    def contains(self, u):
        """
        Even-odd test; points within `tol` of the loop count as inside.
        """
        pts = np.atleast_2d(np.asarray(u, dtype=float))
        a, b = self._edges()
        x, y = pts[:, 0:1], pts[:, 1:2]
        straddle = (a[None, :, 1] > y) != (b[None, :, 1] > y)
        dy = np.where(b[:, 1] == a[:, 1], 1.0, b[:, 1] - a[:, 1])
        x_cross = a[None, :, 0] + (y - a[None, :, 1]) * (b[None, :, 0] - a[None, :, 0]) / dy
        crossings = np.sum(straddle & (x < x_cross), axis=1)
        inside = (crossings % 2 == 1) | self.on_boundary(pts)
        if np.ndim(u) == 1:
            return bool(inside[0])
        return inside

    def winding_number(self, u):
        """
        Signed turning of the loop around each point, in whole turns.
        """
        pts = np.atleast_2d(np.asarray(u, dtype=float))
        a, b = self._edges()
        ra = a[None, :, :] - pts[:, None, :]
        rb = b[None, :, :] - pts[:, None, :]
        cross = ra[..., 0] * rb[..., 1] - ra[..., 1] * rb[..., 0]
        dot = np.einsum('nik,nik->ni', ra, rb)
        total = np.sum(np.arctan2(cross, dot), axis=1)
        ret = np.rint(total / (2.0 * np.pi)).astype(int)
        if np.ndim(u) == 1:
            return int(ret[0])
        return ret

    def to_dict(self):
        return {
            'ubar': list(self.ubar),
            'arcs': {label: arc.tolist() for label, arc in self.arcs.items()},
            'corners': {name: p.to_list() for name, p in sorted(self.corners.items())},
            'a_star': self.a_star,
            'closure_gap': self.closure_gap,
        }
