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
from scipy.spatial import cKDTree

logger = logging.getLogger(__name__)


class BoundaryOracle(object):
    """
    Dense inscribed polygon of a convex curve, plus exact refinement on the curve.

    The polygon answers the cheap questions (inside tests, brackets, nearest
    samples); Newton steps on the analytic pieces turn those into exact answers.
    Every method is vectorized over an (n, 2) array of points.
    """
    NEWTON_STEPS = 5
    BISECTION_STEPS = 56
    DIRECTIONS = 1024

    def __init__(self, curve, n_points=8192):
        self.curve = curve
        length = curve.total_length

        s = np.linspace(0.0, length, int(n_points), endpoint=False)
        s = np.unique(np.concatenate([s, curve.joint_s()]))
        self.s = s
        self.points = curve.point_at(s)
        self.spacing = length / float(n_points)
        self.tree = cKDTree(self.points)

        self.centroid = self.points.mean(axis=0)
        rel = self.points - self.centroid
        self._angles = np.unwrap(np.arctan2(rel[:, 1], rel[:, 0]))
        self._next = np.roll(np.arange(len(s)), -1)

        self.corner_s = np.asarray(curve.corner_s)

        logger.debug('Built boundary oracle with %d samples (spacing %.3g)', len(s),
                     self.spacing)

    @property
    def diameter(self):
        return float(np.max(self._extents()))

    @property
    def width(self):
        return float(np.min(self._extents()))

    def _extents(self):
        theta = np.linspace(0.0, math.pi, self.DIRECTIONS, endpoint=False)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        proj = self.points.dot(dirs.T)
        return proj.max(axis=0) - proj.min(axis=0)

    def _edge_index(self, pts):
        rel = pts - self.centroid
        phi = np.arctan2(rel[:, 1], rel[:, 0])
        a0 = self._angles[0]
        phi = a0 + np.mod(phi - a0, 2.0 * math.pi)
        k = np.searchsorted(self._angles, phi, side='right') - 1
        return np.clip(k, 0, len(self.s) - 1)

    def polygon_contains(self, pts):
        """
        Strictly inside the inscribed polygon.  The polygon lies inside the curve, so
        True here is also True for the curve.
        """
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        k = self._edge_index(pts)
        a = self.points[k]
        b = self.points[self._next[k]]
        e = b - a
        r = pts - a
        return e[:, 0] * r[:, 1] - e[:, 1] * r[:, 0] > 0

    def project(self, pts):
        """
        Nearest boundary point of each point: returns (s, foot, distance).
        """
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        curve = self.curve
        d0, k = self.tree.query(pts)
        s0 = self.s[k]
        s = s0.copy()
        step_cap = 2.0 * self.spacing
        for _ in range(self.NEWTON_STEPS):
            r = pts - curve.point_at(s)
            t = curve.tangent_at(s)
            n = curve.normal_at(s)
            kappa = curve.curvature_at(s)
            num = np.einsum('ij,ij->i', r, t)
            den = np.maximum(1.0 - kappa * np.einsum('ij,ij->i', r, n), 0.5)
            s = s + np.clip(num / den, -step_cap, step_cap)
        s = np.mod(s, curve.total_length)
        foot = curve.point_at(s)
        dist = np.linalg.norm(pts - foot, axis=1)

        # nearest sample wins at corners, where Newton slides past the joint
        better = d0 < dist
        s[better] = s0[better]
        foot[better] = self.points[k[better]]
        dist[better] = d0[better]
        return s, foot, dist

    def _at_corner(self, s):
        if not len(self.corner_s):
            return np.zeros(len(s), dtype=bool)
        gap = np.abs(s[:, None] - self.corner_s[None, :])
        gap = np.minimum(gap, self.curve.total_length - gap)
        return np.any(gap < 1e-12 * self.curve.total_length, axis=1)

    def signed_distance(self, pts):
        """
        Distance to the boundary, positive inside the domain and negative outside.
        """
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        s, foot, dist = self.project(pts)
        inside = self.polygon_contains(pts)
        depth = np.einsum('ij,ij->i', pts - foot, self.curve.normal_at(s))
        inside |= (depth > 0) & ~self._at_corner(s)
        return np.where(inside, dist, -dist)

    def contains(self, pts, tol=0.0):
        """
        Membership in the closed domain, with a slack of `tol`.
        """
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        ret = self.polygon_contains(pts)
        rest = ~ret
        if np.any(rest):
            ret[rest] = self.signed_distance(pts[rest]) >= -tol
        return ret

    def ray_exit(self, origins, dirs):
        """
        Where rays from points of the closed domain leave it: returns (t, s) with
        origin + t dir = C(s).
        """
        origins = np.atleast_2d(np.asarray(origins, dtype=float))
        dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
        curve = self.curve
        n = len(origins)

        lo = np.zeros(n)
        hi = np.full(n, 2.0 * curve.diameter + self.spacing)
        for _ in range(self.BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            inside = self.polygon_contains(origins + mid[:, None] * dirs)
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)

        hit = origins + hi[:, None] * dirs
        k = self._edge_index(hit)
        s_lo = self.s[k]
        s_hi = np.where(self._next[k] == 0, curve.total_length, self.s[self._next[k]])
        a = self.points[k]
        b = self.points[self._next[k]]
        frac = np.einsum('ij,ij->i', hit - a, b - a) / np.maximum(
            np.einsum('ij,ij->i', b - a, b - a), 1e-300)
        s = s_lo + np.clip(frac, 0.0, 1.0) * (s_hi - s_lo)

        # Newton on cross(dir, C(s) - origin) = 0 along the exact curve
        for _ in range(self.NEWTON_STEPS):
            r = curve.point_at(s) - origins
            t = curve.tangent_at(s)
            g = dirs[:, 0] * r[:, 1] - dirs[:, 1] * r[:, 0]
            dg = dirs[:, 0] * t[:, 1] - dirs[:, 1] * t[:, 0]
            safe = np.abs(dg) > 1e-12
            step = np.where(safe, g / np.where(safe, dg, 1.0), 0.0)
            s = np.clip(s - step, s_lo - self.spacing, s_hi + self.spacing)
        s = np.mod(s, curve.total_length)
        t = np.einsum('ij,ij->i', curve.point_at(s) - origins, dirs)
        return t, s

    def chords(self, anchors, angles):
        """
        Boundary parameters (s_P, s_Q) of the lines through interior anchors at the
        given angles in [0, pi).  Q is reached along +p, so (Q - P) . e2 > 0, and
        horizontal lines put Q on the right.
        """
        anchors = np.atleast_2d(np.asarray(anchors, dtype=float))
        angles = np.atleast_1d(np.asarray(angles, dtype=float))
        p = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        _, s_q = self.ray_exit(anchors, p)
        _, s_p = self.ray_exit(anchors, -p)
        return s_p, s_q

    def locate(self, pts):
        """
        Arclength of the boundary point nearest to each point.
        """
        s, _, _ = self.project(pts)
        return s
