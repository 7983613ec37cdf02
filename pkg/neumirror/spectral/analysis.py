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
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import optimize, special as scipy_special

from neumirror.core.constants import Multiplicity
from neumirror.core.rng import path_generator
from neumirror.lyapunov.utils import pairs_in_T
from neumirror.spectral.exceptions import MultiplicityUnresolved
from neumirror.spectral.fem import assemble_fem, eigen_residuals, eigen_smallest
from neumirror.spectral.mesh import triangulate
from neumirror.spectral.models import EigenfunctionReport, EigenReport, MonotonicityReport

logger = logging.getLogger(__name__)

# P1 eigenvalues converge at second order in h
ORDER = 2
SIMPLE_MARGIN = 10.0


def disk_eigenvalue(radius=1.0):
    """
    Second Neumann eigenvalue of a disk: (j'_{1,1} / R)^2, j'_{1,1} the first
    positive zero of the derivative of J_1.
    """
    root = optimize.brentq(lambda x: scipy_special.jvp(1, x), 1.0, 3.0, xtol=1e-14)
    return (root / radius) ** 2


def richardson(values, ratio=2.0, order=ORDER):
    """
    Extrapolate a sequence computed at h, h/ratio, h/ratio^2, ...

    The error estimate is the size of the last correction; the observed order needs
    three values.
    """
    values = [float(v) for v in values]
    if len(values) < 2:
        return {'value': values[-1], 'error': None, 'order': None}
    factor = ratio ** order - 1.0
    fine, coarse = values[-1], values[-2]
    ret = {'value': fine + (fine - coarse) / factor, 'error': abs(fine - coarse) / factor,
           'order': None}
    if len(values) >= 3:
        d1 = abs(values[-3] - values[-2])
        d2 = abs(values[-2] - values[-1])
        if d1 > 0 and d2 > 0:
            ret['order'] = math.log(d1 / d2) / math.log(ratio)
    return ret


def multiplicity_verdict(gap_ratio, error):
    """
    simple when the gap clears ten times the error, double when it is below the
    error, unresolved in between or without an error estimate.
    """
    if error is None:
        return Multiplicity.UNRESOLVED
    if gap_ratio > SIMPLE_MARGIN * error:
        return Multiplicity.SIMPLE
    if gap_ratio < error:
        return Multiplicity.DOUBLE
    return Multiplicity.UNRESOLVED


def _solve_level(curve, h, k, min_angle, smoothing):
    mesh = triangulate(curve, h, min_angle=min_angle, smoothing=smoothing)
    K, M = assemble_fem(mesh)
    mu, vectors = eigen_smallest(K, M, k)
    res, gram = eigen_residuals(K, M, mu, vectors)
    level = {
        'h': h,
        'n_vertices': mesh.n_vertices,
        'n_triangles': len(mesh.triangles),
        'min_angle': mesh.min_angle,
        'mu': mu.tolist(),
        'gap_ratio': float((mu[2] - mu[1]) / mu[1]),
        'residual': float(np.max(res)),
        'gram_residual': gram,
    }
    logger.info('h=%g: mu2=%.8g mu3=%.8g', h, mu[1], mu[2])
    return mesh, mu, vectors, level


def psi_difference(fine_mesh, fine_psi, coarse_mesh, coarse_psi):
    """
    Max-norm difference of two normalized eigenvectors on the fine vertices, after
    aligning signs.
    """
    a = fine_psi / np.max(np.abs(fine_psi))
    b = coarse_mesh.interpolate(coarse_psi / np.max(np.abs(coarse_psi)), fine_mesh.vertices)
    return float(min(np.max(np.abs(a - b)), np.max(np.abs(a + b))))


def solve_ladder(curve, h, levels=3, k=6, min_angle=15.0, smoothing=3, threads=1):
    """
    Eigenpairs on meshes h, h/2, ..., Richardson extrapolation of mu2, mu3 and their
    relative gap, and the multiplicity verdict for mu2.
    """
    hs = [h / 2.0 ** i for i in range(int(levels))]
    with ThreadPoolExecutor(max_workers=max(min(int(threads), len(hs)), 1)) as executor:
        results = list(executor.map(
            lambda hh: _solve_level(curve, hh, k, min_angle, smoothing), hs))

    mu2 = [r[1][1] for r in results]
    mu3 = [r[1][2] for r in results]
    r2 = richardson(mu2)
    r3 = richardson(mu3)
    gaps = richardson([(b - a) / a for a, b in zip(mu2, mu3)])
    gap_ratio = max(gaps['value'], 0.0)
    error = None
    if r2['error'] is not None:
        error = max(r2['error'], r3['error']) / r2['value']
    verdict = multiplicity_verdict(gap_ratio, error)
    logger.info('mu2=%.8g, gap ratio %.3g, relative error %s: %s', r2['value'], gap_ratio,
                'n/a' if error is None else '{0:.3g}'.format(error), verdict)

    mesh, mu, vectors, _ = results[-1]
    psi_error = None
    if len(results) >= 2:
        coarse_mesh, _, coarse_vectors, _ = results[-2]
        psi_error = psi_difference(mesh, vectors[:, 1], coarse_mesh,
                                   coarse_vectors[:, 1]) / (2.0 ** ORDER - 1.0)

    summary = {
        'mu2': r2['value'],
        'mu3': r3['value'],
        'mu2_error': r2['error'],
        'mu3_error': r3['error'],
        'order': r2['order'],
        'gap_ratio': gap_ratio,
        'error': error,
        'nonincreasing': bool(np.all(np.diff(mu2) <= 1e-10 * abs(mu2[0]))),
    }
    return EigenReport(mesh, mu, vectors, [r[3] for r in results], summary, verdict,
                       psi_error=psi_error, domain_hash=curve.domain_hash)


##
# Eigenfunction structure
##

def _signs(sign):
    return (1, -1) if sign is None else (int(sign),)


def _side(a, b, pts):
    a = np.asarray(a, dtype=float)
    d = np.asarray(b, dtype=float) - a
    r = np.atleast_2d(pts) - a
    return d[0] * r[:, 1] - d[1] * r[:, 0]


def sample_T_pairs(curve, special, lset, n_pairs, seed=0, max_rounds=50):
    """
    Uniform pairs of domain points conditioned on lying in T.
    """
    rng = path_generator(seed, 0)
    _, boundary = curve.sample(512)
    lo, hi = boundary.min(axis=0), boundary.max(axis=0)
    batch = min(max(4 * n_pairs, 1000), 20000)
    xs, ys = [], []
    found = 0
    for _ in range(max_rounds):
        pts = rng.uniform(lo, hi, size=(2 * batch, 2))
        pts = pts[curve.oracle.contains(pts)]
        half = len(pts) // 2
        a, b = pts[:half], pts[half:2 * half]
        keep = pairs_in_T(curve, special, lset, a, b)
        xs.append(a[keep])
        ys.append(b[keep])
        found += int(np.sum(keep))
        if found >= n_pairs:
            break
    if found < n_pairs:
        logger.warning('Only %d of %d pairs in T after %d rounds', found, n_pairs, max_rounds)
    return np.concatenate(xs)[:n_pairs], np.concatenate(ys)[:n_pairs]


def monotonicity(mesh, psi, xs, ys, tol=0.0, sign=None):
    """
    Fraction of pairs with psi(y) >= psi(x) - tol, for the given sign of psi or,
    when sign is None, the one that maximizes it.
    """
    psi = psi / np.max(np.abs(psi))
    diff = mesh.interpolate(psi, ys) - mesh.interpolate(psi, xs)
    best = None
    for sign in _signs(sign):
        d = sign * diff
        n_ok = int(np.sum(d >= -tol))
        if best is None or n_ok > best[1]:
            worst = float(max(-np.min(d), 0.0)) if len(d) else 0.0
            best = (sign, n_ok, worst)
    sign, n_ok, worst = best
    return MonotonicityReport(len(diff), n_ok, worst, sign, tol)


def cap_masks(special, pts):
    """
    Membership in D_L, the side of line(P1, Q6') away from Q6, and in D_R, the side
    of line(P1', Q6) away from Q6'.
    """
    P1, Q6p = special.point('P1'), special.point("Q6'")
    P1p, Q6 = special.point("P1'"), special.point('Q6')
    left = _side(P1, Q6p, pts) * _side(P1, Q6p, [Q6])[0] < 0
    right = _side(P1p, Q6, pts) * _side(P1p, Q6, [Q6p])[0] < 0
    return left, right


def sign_check(mesh, psi, special, tol=0.0, sign=None):
    """
    psi >= -tol on D_L and psi <= tol on D_R, for sign * psi.  A sign of None
    takes the one with fewer violations.
    """
    psi = psi / np.max(np.abs(psi))
    left, right = cap_masks(special, mesh.vertices)
    n = int(np.sum(left) + np.sum(right))
    best = None
    for sign in _signs(sign):
        s = sign * psi
        bad = int(np.sum(s[left] < -tol) + np.sum(s[right] > tol))
        if best is None or bad < best[1]:
            best = (sign, bad)
    sign, bad = best
    return {
        'sign': sign,
        'n_left': int(np.sum(left)),
        'n_right': int(np.sum(right)),
        'violations': bad,
        'violation_fraction': bad / float(n) if n else 0.0,
        'tol': tol,
    }


def middle_mask(special, pts):
    """
    The band D_M between [P3, Q4'] and [P3', Q4].
    """
    right_of_left = _side(special.point('P3'), special.point("Q4'"), pts) < 0
    left_of_right = _side(special.point("P3'"), special.point('Q4'), pts) > 0
    return right_of_left & left_of_right


def gradient_cone(mesh, psi, special, tol_angle=0.0, sign=None):
    """
    Fraction of D_M triangles whose gradient angle lies in
    [alpha - pi/2, pi/2 - alpha] (up to tol_angle), for sign * psi or, when sign is
    None, the better sign.
    """
    inside = middle_mask(special, mesh.centroids)
    grads = mesh.gradient_of(psi)[inside]
    limit = math.pi / 2.0 - special.alpha + tol_angle
    best = None
    for sign in _signs(sign):
        beta = np.arctan2(sign * grads[:, 1], sign * grads[:, 0])
        excess = np.abs(beta) - limit
        n_ok = int(np.sum(excess <= 0))
        if best is None or n_ok > best[1]:
            best = (sign, n_ok, float(max(np.max(excess), 0.0)) if len(excess) else 0.0)
    sign, n_ok, worst = best
    n = int(np.sum(inside))
    return {
        'sign': sign,
        'n_triangles': n,
        'n_ok': n_ok,
        'fraction': n_ok / float(n) if n else 0.0,
        'worst_excess': worst,
        'tol_angle': tol_angle,
    }


def hot_spots(mesh, psi):
    imax = int(np.argmax(psi))
    imin = int(np.argmin(psi))
    on_boundary = mesh.boundary_flags
    return {
        'argmax': mesh.vertices[imax].tolist(),
        'argmin': mesh.vertices[imin].tolist(),
        'max_on_boundary': bool(on_boundary[imax]),
        'min_on_boundary': bool(on_boundary[imin]),
        'holds': bool(on_boundary[imax] and on_boundary[imin]),
    }


def nodal_segments(mesh, psi):
    """
    Zero set of the P1 interpolant as segments, one per sign-changing triangle.
    Zero values count as positive.
    """
    vals = np.asarray(psi)[mesh.triangles]
    pts = mesh.vertices[mesh.triangles]
    positive = vals >= 0
    mixed = np.any(positive, axis=1) & ~np.all(positive, axis=1)
    vals, pts, positive = vals[mixed], pts[mixed], positive[mixed]

    crossings = []
    for k in range(3):
        j = (k + 1) % 3
        va, vb = vals[:, k], vals[:, j]
        t = va / np.where(va == vb, 1.0, va - vb)
        crossings.append((positive[:, k] != positive[:, j],
                          pts[:, k] + t[:, None] * (pts[:, j] - pts[:, k])))
    hits = np.stack([c[0] for c in crossings], axis=1)
    where = np.stack([c[1] for c in crossings], axis=1)
    # two of the three edges cross in every mixed triangle
    first = np.argmax(hits, axis=1)
    last = 2 - np.argmax(hits[:, ::-1], axis=1)
    rows = np.arange(len(hits))
    return np.stack([where[rows, first], where[rows, last]], axis=1)


def analyze_eigenfunction(curve, special, lset, report, which=2, n_pairs=10000, tol_mono=None,
                          tol_angle=None, seed=0, force=False):
    """
    Hot spots and nodal line of the `which`-th eigenfunction, plus monotonicity on
    T, the sign on D_L / D_R and the gradient cone on D_M when special points and a
    Lyapunov set are given.
    """
    if report.multiplicity != Multiplicity.SIMPLE and not force:
        raise MultiplicityUnresolved('Multiplicity of mu2 is {0}'.format(report.multiplicity),
                                     gap_ratio=report.gap_ratio)
    mesh = report.mesh
    psi = report.eigenvector(which)
    segments = nodal_segments(mesh, psi)
    ret = EigenfunctionReport(hot_spots(mesh, psi), segments)
    if special is None or lset is None:
        return ret

    tol = report.psi_error or 0.0
    tol_mono = tol if tol_mono is None else tol_mono
    tol_angle = mesh.h if tol_angle is None else tol_angle
    xs, ys = sample_T_pairs(curve, special, lset, n_pairs, seed=seed)
    ret.monotonicity = monotonicity(mesh, psi, xs, ys, tol=tol_mono)
    # one orientation of psi for all three checks
    sign = ret.monotonicity.sign
    ret.sign = sign_check(mesh, psi, special, tol=tol, sign=sign)
    left, right = cap_masks(special, segments.reshape(-1, 2))
    ret.sign['nodal_points_in_caps'] = int(np.sum(left | right))
    ret.gradient_cone = gradient_cone(mesh, psi, special, tol_angle=tol_angle, sign=sign)
    logger.info('Monotone fraction %.4f, sign violations %d, cone fraction %.4f',
                ret.monotonicity.fraction, ret.sign['violations'],
                ret.gradient_cone['fraction'])
    return ret
