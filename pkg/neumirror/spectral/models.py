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
from functools import cached_property

import numpy as np
from scipy.interpolate import LinearNDInterpolator, NearestNDInterpolator
from scipy.spatial import Delaunay

from neumirror.spectral.exceptions import DegenerateTriangle

logger = logging.getLogger(__name__)

# relative to h^2
MIN_AREA = 1e-14


class TriMesh(object):
    """
    Triangulation of the polygon through the boundary vertices.  The first
    `n_boundary` vertices lie on the boundary curve, in arclength order.
    """

    def __init__(self, vertices, triangles, n_boundary, h, boundary_s=None):
        self.vertices = np.asarray(vertices, dtype=float)
        tris = np.asarray(triangles, dtype=int)
        # counterclockwise
        flip = self._signed_areas(self.vertices, tris) < 0
        tris[flip] = tris[flip][:, [0, 2, 1]]
        self.triangles = tris
        self.n_boundary = int(n_boundary)
        self.h = float(h)
        self.boundary_s = None if boundary_s is None else np.asarray(boundary_s, dtype=float)

    @staticmethod
    def _signed_areas(vertices, triangles):
        a, b, c = (vertices[triangles[:, k]] for k in range(3))
        ab, ac = b - a, c - a
        return 0.5 * (ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0])

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def boundary_flags(self):
        flags = np.zeros(self.n_vertices, dtype=bool)
        flags[:self.n_boundary] = True
        return flags

    @cached_property
    def areas(self):
        return self._signed_areas(self.vertices, self.triangles)

    @property
    def total_area(self):
        return float(np.sum(self.areas))

    @cached_property
    def angles(self):
        """
        Interior angles in degrees, one row per triangle.
        """
        pts = self.vertices[self.triangles]
        ret = np.empty((len(pts), 3))
        for k in range(3):
            u = pts[:, (k + 1) % 3] - pts[:, k]
            v = pts[:, (k + 2) % 3] - pts[:, k]
            cos = np.einsum('ij,ij->i', u, v) / (np.linalg.norm(u, axis=1) *
                                                  np.linalg.norm(v, axis=1))
            ret[:, k] = np.degrees(np.arccos(np.clip(cos, -1.0, 1.0)))
        return ret

    @property
    def min_angle(self):
        return float(np.min(self.angles))

    @property
    def centroids(self):
        return np.mean(self.vertices[self.triangles], axis=1)

    def validate(self):
        bad = self.areas <= MIN_AREA * self.h ** 2
        if np.any(bad):
            k = int(np.argmax(bad))
            raise DegenerateTriangle('{0} triangles with area below {1:.3g}'.format(
                int(np.sum(bad)), MIN_AREA * self.h ** 2),
                triangle=self.vertices[self.triangles[k]].tolist())

    @cached_property
    def gradients(self):
        """
        Gradients of the three hat functions on every triangle, shape (m, 3, 2).
        """
        pts = self.vertices[self.triangles]
        two_area = 2.0 * self.areas
        ret = np.empty((len(pts), 3, 2))
        for k in range(3):
            e = pts[:, (k + 2) % 3] - pts[:, (k + 1) % 3]
            # rotate the opposite edge inward
            ret[:, k, 0] = -e[:, 1] / two_area
            ret[:, k, 1] = e[:, 0] / two_area
        return ret

    def gradient_of(self, values):
        """
        Constant gradient of the P1 interpolant of vertex values on each triangle.
        """
        return np.einsum('mk,mkd->md', np.asarray(values)[self.triangles], self.gradients)

    @cached_property
    def delaunay(self):
        return Delaunay(self.vertices)

    def interpolate(self, values, points):
        """
        P1 interpolant at arbitrary points; points off the polygon take the value of
        the nearest vertex.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        ret = LinearNDInterpolator(self.delaunay, values)(points)
        missing = np.isnan(ret)
        if np.any(missing):
            ret[missing] = NearestNDInterpolator(self.vertices, values)(points[missing])
        return ret

    def to_dict(self):
        return {
            'h': self.h,
            'n_vertices': self.n_vertices,
            'n_boundary': self.n_boundary,
            'n_triangles': len(self.triangles),
            'min_angle': self.min_angle,
            'area': self.total_area,
        }


class EigenReport(object):
    """
    Smallest Neumann eigenvalues on a mesh ladder, with the multiplicity verdict for
    the second one.  Eigenvalues are for -Laplacian; the generator of reflected
    Brownian motion is half the Laplacian, so its decay rates are mu / 2.
    """

    def __init__(self, mesh, mu, vectors, levels, richardson, multiplicity, psi_error=None,
                 domain_hash=None):
        self.mesh = mesh
        self.mu = np.asarray(mu, dtype=float)
        self.vectors = np.asarray(vectors, dtype=float)
        self.levels = levels
        self.richardson = richardson
        self.multiplicity = multiplicity
        self.psi_error = psi_error
        self.domain_hash = domain_hash

    @property
    def gap_ratio(self):
        return self.richardson['gap_ratio']

    @property
    def mu2(self):
        return self.richardson['mu2']

    def eigenvector(self, which=2):
        """
        Eigenvector of the `which`-th eigenvalue (1-based) scaled to max |psi| = 1.
        """
        v = self.vectors[:, which - 1]
        return v / np.max(np.abs(v))

    def to_rows(self, which=2):
        ret = [['x', 'y', 'psi']]
        psi = self.eigenvector(which)
        for (x, y), value in zip(self.mesh.vertices, psi):
            ret.append([float(x), float(y), float(value)])
        return ret

    def to_dict(self):
        return {
            'mu': self.mu.tolist(),
            'generator_rates': (0.5 * self.mu).tolist(),
            'gap_ratio': self.gap_ratio,
            'multiplicity': self.multiplicity,
            'richardson': self.richardson,
            'psi_error': self.psi_error,
            'levels': self.levels,
            'mesh': self.mesh.to_dict(),
            'domain_hash': self.domain_hash,
        }


class MonotonicityReport(object):

    def __init__(self, n_pairs, n_ok, worst, sign, tol):
        self.n_pairs = int(n_pairs)
        self.n_ok = int(n_ok)
        self.worst = float(worst)
        self.sign = int(sign)
        self.tol = float(tol)

    @property
    def fraction(self):
        return self.n_ok / float(self.n_pairs) if self.n_pairs else 0.0

    def to_dict(self):
        return {
            'n_pairs': self.n_pairs,
            'n_ok': self.n_ok,
            'fraction': self.fraction,
            'worst_violation': self.worst,
            'sign': self.sign,
            'tol': self.tol,
        }


class EigenfunctionReport(object):
    """
    Structure of a second eigenfunction.  The T-dependent parts are None when the
    domain has no Lyapunov set.
    """

    def __init__(self, hot_spots, nodal_segments, monotonicity=None, sign=None,
                 gradient_cone=None):
        self.hot_spots = hot_spots
        self.nodal_segments = np.asarray(nodal_segments, dtype=float).reshape(-1, 2, 2)
        self.monotonicity = monotonicity
        self.sign = sign
        self.gradient_cone = gradient_cone

    def to_dict(self):
        return {
            'hot_spots': self.hot_spots,
            'monotonicity': self.monotonicity.to_dict() if self.monotonicity else None,
            'sign': self.sign,
            'gradient_cone': self.gradient_cone,
            'nodal_segments': self.nodal_segments.tolist(),
        }
