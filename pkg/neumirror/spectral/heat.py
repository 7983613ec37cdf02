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
Heat flow with generator Laplacian / 2, by finite elements and by reflected Brownian
paths.
"""

import logging
import math

import numpy as np
from scipy.sparse.linalg import splu

from neumirror.core.exceptions import InputError
from neumirror.coupling.workflows import reflected_bm
from neumirror.spectral.fem import assemble_fem
from neumirror.spectral.mesh import triangulate

logger = logging.getLogger(__name__)


class Bump(object):
    """
    exp(1 - 1 / (1 - r^2 / R^2)) inside the ball of radius R, zero outside.
    """

    def __init__(self, center, radius, height=1.0):
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        self.height = float(height)

    def __call__(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        q = np.sum((pts - self.center) ** 2, axis=1) / self.radius ** 2
        ret = np.zeros(len(pts))
        inside = q < 1.0
        ret[inside] = self.height * np.exp(1.0 - 1.0 / (1.0 - q[inside]))
        return ret

    def check_inside(self, curve):
        depth = curve.oracle.signed_distance([self.center])[0]
        if depth <= self.radius:
            raise InputError('Bump of radius {0:g} at {1} is not inside the domain'.format(
                self.radius, self.center.tolist()))

    def to_dict(self):
        return {'center': self.center.tolist(), 'radius': self.radius, 'height': self.height}


def heat_fem(mesh, f0, t, n_steps=200, K=None, M=None):
    """
    Implicit Euler for M u' = -K u / 2 from the nodal values of f0.  The total mass
    1^T M u is conserved since K has the constants in its kernel.
    """
    if K is None or M is None:
        K, M = assemble_fem(mesh)
    u = f0(mesh.vertices)
    if t <= 0:
        return u
    dt = t / float(n_steps)
    lu = splu((M + 0.5 * dt * K).tocsc())
    for _ in range(n_steps):
        u = lu.solve(M @ u)
    return u


def heat_mc(curve, f0, t, x, cfg, n_paths, stream_offset=0, threads=1):
    """
    Mean of f0(X(t)) over reflected paths from x, with its standard error.
    """
    if t <= 0:
        return float(f0([x])[0]), 0.0
    ends = reflected_bm(curve, x, cfg.replace(t_max=t), n_paths, stream_offset=stream_offset,
                        threads=threads)['X']
    values = f0(ends)
    return float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(n_paths))


def heat_cross_check(curve, f0, t, x_eval, mc_paths, cfg, h=0.05, n_steps=200, threads=1):
    """
    Compare the finite element heat flow against the path average at each point of
    x_eval.  The mesh error is the change between meshes h and h/2.
    """
    f0.check_inside(curve)
    x_eval = np.atleast_2d(np.asarray(x_eval, dtype=float))
    if t <= 0:
        exact = f0(x_eval)
        fem = {'fine': exact, 'coarse': exact}
    else:
        fem = {}
        for label, hh in (('coarse', h), ('fine', h / 2.0)):
            mesh = triangulate(curve, hh)
            fem[label] = mesh.interpolate(heat_fem(mesh, f0, t, n_steps=n_steps), x_eval)

    rows = []
    for i, x in enumerate(x_eval):
        mc, stderr = heat_mc(curve, f0, t, x, cfg, mc_paths, stream_offset=i * mc_paths,
                             threads=threads)
        value = float(fem['fine'][i])
        mesh_error = abs(value - float(fem['coarse'][i])) / 3.0
        diff = abs(value - mc)
        rows.append({
            'x': x.tolist(),
            'fem': value,
            'mc': mc,
            'mc_stderr': stderr,
            'mesh_error': mesh_error,
            'difference': diff,
            'ok': bool(diff <= 3.0 * (stderr + mesh_error) + 1e-12),
        })
        logger.info('x=%s: fem=%.5g mc=%.5g +- %.2g', x.tolist(), value, mc, stderr)
    return {'t': t, 'bump': f0.to_dict(), 'rows': rows, 'ok': all(r['ok'] for r in rows)}


def equilibrium(curve, f0, h=0.05):
    """
    The Neumann limit: mean of f0 over the domain.
    """
    mesh = triangulate(curve, h)
    _, M = assemble_fem(mesh)
    return float(np.sum(M @ f0(mesh.vertices)) / mesh.total_area)
