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

"""
Delaunay meshes of convex domains: boundary samples plus a hexagonal interior lattice,
relaxed by Laplacian smoothing.
"""

import logging
import math

import numpy as np
from scipy.spatial import Delaunay

from neumirror.core.rng import path_generator
from neumirror.core.utils import auto_retry
from neumirror.spectral.exceptions import MeshQualityFailure, MeshTooCoarse
from neumirror.spectral.models import MIN_AREA, TriMesh

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 5
# interior lattice points keep this many h from the boundary
MARGIN = 0.6
JITTER = 0.08


def boundary_samples(curve, h):
    """
    Arclengths of boundary vertices at spacing at most h; corners are always
    vertices.
    """
    L = curve.total_length
    n = max(int(math.ceil(L / h)), 8)
    s = np.linspace(0.0, L, n, endpoint=False)
    corners = np.asarray(curve.corner_s, dtype=float)
    if len(corners):
        gap = np.abs(s[:, None] - corners[None, :])
        gap = np.min(np.minimum(gap, L - gap), axis=1)
        s = np.union1d(s[gap > 0.3 * h], corners)
    return s


def hex_lattice(curve, h, boundary_pts, jitter=0.0, seed=0):
    lo = boundary_pts.min(axis=0)
    hi = boundary_pts.max(axis=0)
    dy = h * math.sqrt(3.0) / 2.0
    rows = np.arange(lo[1], hi[1] + dy, dy)
    pts = []
    for i, y in enumerate(rows):
        xs = np.arange(lo[0] + (0.5 * h if i % 2 else 0.0), hi[0] + h, h)
        pts.append(np.column_stack([xs, np.full(len(xs), y)]))
    pts = np.concatenate(pts)
    if jitter:
        pts = pts + jitter * h * path_generator(seed, 0).standard_normal(pts.shape)
    keep = curve.oracle.signed_distance(pts) >= MARGIN * h
    return pts[keep]


def _simplices(points):
    return Delaunay(points).simplices.copy()


def smooth(points, n_boundary, iterations):
    """
    Move every interior vertex to the mean of its Delaunay neighbours.
    """
    points = points.copy()
    for _ in range(iterations):
        indptr, indices = Delaunay(points).vertex_neighbor_vertices
        counts = np.diff(indptr)
        owner = np.repeat(np.arange(len(points)), counts)
        sums = np.zeros_like(points)
        np.add.at(sums, owner, points[indices])
        means = sums / np.maximum(counts, 1)[:, None]
        points[n_boundary:] = means[n_boundary:]
    return points


@auto_retry('triangulate', max_attempts=MAX_ATTEMPTS, exception_type=MeshQualityFailure)
def _triangulate(curve, h, min_angle, smoothing, attempt=1):
    s = boundary_samples(curve, h)
    boundary_pts = curve.point_at(s)
    jitter = JITTER * (attempt - 1)
    interior = hex_lattice(curve, h, boundary_pts, jitter=jitter, seed=attempt)
    points = smooth(np.concatenate([boundary_pts, interior]), len(s), smoothing)

    mesh = TriMesh(points, _simplices(points), len(s), h, boundary_s=s)
    if np.min(mesh.areas) <= MIN_AREA * h ** 2:
        raise MeshQualityFailure('Degenerate triangle on attempt {0}'.format(attempt))
    if mesh.min_angle < min_angle:
        raise MeshQualityFailure('Minimum angle {0:.2f} below {1:g} on attempt {2}'.format(
            mesh.min_angle, min_angle, attempt))
    return mesh


def triangulate(curve, h, min_angle=15.0, smoothing=3):
    """
    Delaunay mesh of the domain with target size h.  A mesh whose smallest angle is
    below min_angle is rebuilt with a jittered lattice, up to five times.
    """
    if not 0 < h < curve.diameter / 10.0:
        raise MeshTooCoarse('h={0:g} for diameter {1:g}'.format(h, curve.diameter))
    mesh = _triangulate(curve, h, min_angle, smoothing)
    logger.info('Mesh h=%g: %d vertices (%d on the boundary), %d triangles, min angle %.1f',
                h, mesh.n_vertices, mesh.n_boundary, len(mesh.triangles), mesh.min_angle)
    return mesh
