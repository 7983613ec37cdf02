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

import json
import logging
import math

import numpy as np
from scipy import optimize

from neumirror.core.constants import Inside, PieceKind, TWO_PI
from neumirror.core.exceptions import InputError, NumericalFailure
from neumirror.core.options import Tolerances
from neumirror.geometry.exceptions import (
    DegeneratePiece,
    FlatMatch,
    JointPoint,
    NoIntersection,
    NotClosed,
    NotConvex,
    RhoTooLarge,
    TangentLine,
)
from neumirror.geometry.models import (
    PIECE_CLASSES,
    BoundaryCurve,
    CircleArc,
    EllipseArc,
    LineRepr,
    Segment,
    Vec2,
)

logger = logging.getLogger(__name__)

CONVEXITY_SAMPLES = 64


##
# Construction and I/O
##

def _scale_of(pieces):
    pts = np.concatenate([p.point(np.linspace(0.0, p.length, 17)) for p in pieces])
    extent = pts.max(axis=0) - pts.min(axis=0)
    return float(np.hypot(*extent))


def build_curve(pieces, tol_close=None, tol_convex=None, tolerances=None,
                oracle_points=8192):
    """
    Validate a counterclockwise list of pieces and wrap it in a BoundaryCurve.

    tol_close is relative to the size of the domain, tol_convex is absolute.
    """
    tolerances = tolerances or Tolerances()
    tol_close = tolerances.close if tol_close is None else tol_close
    tol_convex = tolerances.convex if tol_convex is None else tol_convex

    pieces = list(pieces)
    if not pieces:
        raise DegeneratePiece('Empty piece list')

    scale = _scale_of(pieces)
    for k, piece in enumerate(pieces):
        following = pieces[(k + 1) % len(pieces)]
        gap = (piece.end - following.start).norm()
        if gap > tol_close * scale:
            raise NotClosed('Piece {0} ends {1:.6g} away from the start of piece {2}'.format(
                k, gap, (k + 1) % len(pieces)), piece=k, gap=gap)

    curve = BoundaryCurve(pieces, tolerances=tolerances, oracle_points=oracle_points)

    # Sampled turning: successive tangents must never turn clockwise
    tangents = np.concatenate([
        p.tangent(np.linspace(0.0, p.length, CONVEXITY_SAMPLES)) for p in pieces
    ])
    following = np.roll(tangents, -1, axis=0)
    cross = tangents[:, 0] * following[:, 1] - tangents[:, 1] * following[:, 0]
    worst = int(np.argmin(cross))
    if cross[worst] < -tol_convex:
        raise NotConvex('Negative turning {0:.3g} near piece {1}'.format(
            cross[worst], worst // CONVEXITY_SAMPLES),
            piece=worst // CONVEXITY_SAMPLES, turning=float(cross[worst]))

    reflex = [k for k, turn in enumerate(curve.corner_turns) if turn >= math.pi - 1e-9]
    if reflex:
        raise NotConvex('Reflex or cusp corner at the start of piece {0}'.format(reflex[0]),
                        piece=reflex[0])

    if abs(curve.total_turning - TWO_PI) > 1e-6:
        raise NotConvex('Total turning is {0:.6g}, expected 2pi'.format(curve.total_turning),
                        turning=curve.total_turning)

    logger.debug('Built %r (%d corners)', curve, len(curve.corner_indices))
    return curve


def piece_from_dict(data):
    try:
        kind = data['kind']
        if kind == PieceKind.CIRCLE_ARC:
            return CircleArc(data['center'], data['radius'], data['from'], data['to'])
        elif kind == PieceKind.ELLIPSE_ARC:
            return EllipseArc(data['center'], data['semi_axes'], data['from'], data['to'])
        elif kind == PieceKind.SEGMENT:
            return Segment(data['from'], data['to'])
    except (KeyError, TypeError, IndexError) as e:
        raise InputError('Malformed piece {0!r}: {1}'.format(data, e))
    raise InputError('Unknown piece kind `{0}`, expected one of {1}'.format(
        kind, ', '.join(sorted(PIECE_CLASSES))))


def curve_from_dict(doc, tolerances=None, oracle_points=8192):
    """
    Build (curve, alpha) from a domain document.  alpha is None when absent.
    """
    if not isinstance(doc, dict) or not isinstance(doc.get('pieces'), list):
        raise InputError('A domain document needs a `pieces` list')
    pieces = [piece_from_dict(d) for d in doc['pieces']]
    curve = build_curve(pieces, tolerances=tolerances, oracle_points=oracle_points)
    alpha = doc.get('alpha')
    return curve, (float(alpha) if alpha is not None else None)


def load_domain(path, tolerances=None, oracle_points=8192):
    try:
        with open(path) as f:
            doc = json.load(f)
    except (IOError, OSError) as e:
        raise InputError('Could not read domain file `{0}`: {1}'.format(path, e))
    except ValueError as e:
        raise InputError('Domain file `{0}` is not valid JSON: {1}'.format(path, e))
    return curve_from_dict(doc, tolerances=tolerances, oracle_points=oracle_points)


def domain_to_dict(curve, alpha=None):
    ret = curve.to_dict()
    if alpha is not None:
        ret['alpha'] = float(alpha)
    return ret


##
# Single point queries
##

def _joint_at(curve, s):
    s = float(s) % curve.total_length
    cum = curve.cumulative_lengths
    eps = 1e-12 * curve.total_length
    for k in range(len(curve.pieces)):
        if abs(s - cum[k]) <= eps or (k == 0 and abs(s - curve.total_length) <= eps):
            return k
    return None


def _one_sided(curve, k, method):
    before = curve.pieces[k - 1]
    after = curve.pieces[k]
    left = getattr(before, method)(np.array([before.length]))[0]
    right = getattr(after, method)(np.array([0.0]))[0]
    return left, right


def point_at(curve, s):
    return Vec2.of(curve.point_at(float(s)))


def tangent_at(curve, s):
    k = _joint_at(curve, s)
    if k is not None and k in curve.corner_indices:
        left, right = _one_sided(curve, k, 'tangent')
        raise JointPoint('Tangent is two-valued at s={0:.6g}'.format(s),
                         left=Vec2.of(left).to_list(), right=Vec2.of(right).to_list())
    return Vec2.of(curve.tangent_at(float(s)))


def normal_at(curve, s):
    """
    Unit inward normal at arclength s.  Raises JointPoint at a corner.
    """
    k = _joint_at(curve, s)
    if k is not None and k in curve.corner_indices:
        left, right = _one_sided(curve, k, 'normal')
        raise JointPoint('Normal is two-valued at s={0:.6g}'.format(s),
                         left=Vec2.of(left).to_list(), right=Vec2.of(right).to_list())
    return Vec2.of(curve.normal_at(float(s)))


def curvature_at(curve, s):
    k = _joint_at(curve, s)
    if k is not None:
        left, right = _one_sided(curve, k, 'curvature')
        if k in curve.corner_indices or abs(left - right) > 1e-9 * max(abs(left), abs(right)):
            raise JointPoint('Curvature is two-valued at s={0:.6g}'.format(s),
                             left=float(left), right=float(right))
    return float(curve.curvature_at(float(s)))


def find_by_normal_angle(curve, beta):
    """
    The boundary point whose inward normal is e^{i beta}: returns (s, point).

    A corner whose normal cone contains the direction answers with the corner.
    """
    ranges = curve.piece_normal_ranges()
    a0 = ranges[0][0]
    target = a0 + (float(beta) - a0) % TWO_PI
    tol = 1e-12

    # Straight pieces first: a match there is a whole interval
    for k, piece in enumerate(curve.pieces):
        lo, hi = ranges[k]
        if piece.kind == PieceKind.SEGMENT:
            for shift in (0.0, TWO_PI):
                if abs(target + shift - lo) <= tol or abs(target - shift - lo) <= tol:
                    interval = (float(curve.cumulative_lengths[k]),
                                float(curve.cumulative_lengths[k + 1]))
                    raise FlatMatch('Normal angle {0:.6g} belongs to piece {1}'.format(
                        beta, k), interval=interval)

    for k, piece in enumerate(curve.pieces):
        lo, hi = ranges[k]
        if piece.kind != PieceKind.SEGMENT and lo - tol <= target <= hi + tol:
            offset = lo - float(piece.normal_angle(np.array([0.0]))[0])
            sig = piece.sigma_of_normal_angle(min(max(target, lo), hi) - offset)
            s = float(curve.cumulative_lengths[k]) + min(max(sig, 0.0), piece.length)
            s %= curve.total_length
            return s, point_at(curve, s)

        next_lo = ranges[k + 1][0] if k + 1 < len(ranges) else a0 + TWO_PI
        if hi < target < next_lo:
            s = float(curve.cumulative_lengths[k + 1]) % curve.total_length
            return s, point_at(curve, s)

    # rounding can leave the target just below a0 + 2pi
    return 0.0, point_at(curve, 0.0)


def line_boundary_intersections(curve, line):
    """
    The two boundary parameters (s_P, s_Q) where the line crosses the boundary,
    with (Q - P) . e2 > 0, or (Q - P) . e1 > 0 for horizontal lines.
    """
    oracle = curve.oracle
    p = np.asarray(line.p)
    anchor = np.asarray(line.anchor)
    tol = curve.tol_root

    def side(s):
        c = curve.point_at(s) - anchor
        return p[0] * c[..., 1] - p[1] * c[..., 0]

    g = side(oracle.s)
    if np.all(g >= -tol) or np.all(g <= tol):
        j = int(np.argmin(np.abs(g)))
        s_j = oracle.s[j]
        res = optimize.minimize_scalar(lambda s: abs(side(s)),
                                       bounds=(s_j - 2 * oracle.spacing,
                                               s_j + 2 * oracle.spacing),
                                       method='bounded', options={'xatol': tol})
        if abs(side(res.x)) <= tol:
            raise TangentLine('Line touches the boundary at s={0:.6g}'.format(
                res.x % curve.total_length), s=float(res.x % curve.total_length))
        raise NoIntersection('Line at angle {0:.6g} through {1} misses the domain'.format(
            line.angle, tuple(line.anchor)))

    positive = g > 0
    crossings = np.nonzero(positive != np.roll(positive, -1))[0]
    if len(crossings) != 2:
        raise NumericalFailure('Line crosses a convex boundary {0} times'.format(
            len(crossings)))

    roots = []
    for i in crossings:
        a = oracle.s[i]
        b = oracle.s[i + 1] if i + 1 < len(oracle.s) else curve.total_length
        roots.append(optimize.brentq(side, a, b, xtol=tol) % curve.total_length)

    s_a, s_b = roots
    d = curve.point_at(s_b) - curve.point_at(s_a)
    if abs(d[1]) > tol:
        upper_is_b = d[1] > 0
    else:
        upper_is_b = d[0] > 0
    return (s_a, s_b) if upper_is_b else (s_b, s_a)


def reflect_point(point, line):
    m = line.m
    a = Vec2.of(point)
    return a - 2.0 * (a - line.anchor).dot(m) * m


def reflect_points(points, anchors, angles):
    """
    Vectorized reflection of points[i] across the line (anchors[i], angles[i]).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    anchors = np.atleast_2d(np.asarray(anchors, dtype=float))
    angles = np.asarray(angles, dtype=float)
    m = np.stack([np.sin(angles), -np.cos(angles)], axis=-1)
    dist = np.einsum('ij,ij->i', points - anchors, np.broadcast_to(m, points.shape))
    return points - 2.0 * dist[:, None] * m


def is_inside(curve, point, tol=None):
    tol = curve.tol_boundary if tol is None else tol
    depth = float(curve.oracle.signed_distance(np.asarray([point], dtype=float))[0])
    if abs(depth) <= tol:
        return Inside.BOUNDARY
    return Inside.INSIDE if depth > 0 else Inside.OUTSIDE


##
# Smoothing and comparison
##

def _fillet(curve, k, rho):
    """
    Trim lengths (back on piece k-1, forward on piece k) and the center of the
    radius-rho circle tangent to both pieces at corner k.
    """
    before = curve.pieces[k - 1]
    after = curve.pieces[k]
    turn = curve.corner_turns[k]
    guess = rho * math.tan(0.5 * turn)

    def residual(x):
        sb = np.array([before.length - x[0]])
        sa = np.array([x[1]])
        c1 = before.point(sb)[0] + rho * before.normal(sb)[0]
        c2 = after.point(sa)[0] + rho * after.normal(sa)[0]
        return c1 - c2

    sol, info, ier, msg = optimize.fsolve(residual, [guess, guess], full_output=True,
                                          xtol=1e-13)
    u, v = float(sol[0]), float(sol[1])
    if ier != 1 or np.max(np.abs(residual(sol))) > 1e-9 * curve.diameter:
        raise NumericalFailure('Fillet at corner {0} did not converge: {1}'.format(k, msg))
    if not (0 < u < before.length and 0 < v < after.length):
        raise RhoTooLarge('Fillet of radius {0} does not fit at corner {1}'.format(rho, k))
    sb = np.array([before.length - u])
    center = before.point(sb)[0] + rho * before.normal(sb)[0]
    return u, v, center


def fillet_smooth(curve, rho):
    """
    Replace every corner by a tangent circular arc of radius rho inscribed in the
    domain.  A curve without corners comes back unchanged.
    """
    rho = float(rho)
    shortest = min(p.length for p in curve.pieces)
    if not 0 < rho < 0.5 * shortest:
        raise RhoTooLarge('rho must lie in (0, {0:.6g}), got {1}'.format(0.5 * shortest, rho))
    if not curve.corner_indices:
        return curve

    n = len(curve.pieces)
    trim_start = np.zeros(n)
    trim_end = np.zeros(n)
    fillets = {}
    for k in curve.corner_indices:
        u, v, center = _fillet(curve, k, rho)
        trim_end[k - 1] = u
        trim_start[k] = v
        fillets[k] = center

    pieces = []
    for k, piece in enumerate(curve.pieces):
        if trim_start[k] + trim_end[k] >= piece.length:
            raise RhoTooLarge('Fillets overlap on piece {0}'.format(k))
        trimmed = piece.sub(trim_start[k], piece.length - trim_end[k])
        if k in fillets:
            center = fillets[k]
            a = np.asarray(pieces[-1].end if pieces else curve.pieces[-1].point(
                np.array([curve.pieces[-1].length - trim_end[-1]]))[0]) - center
            b = np.asarray(trimmed.start) - center
            arc = CircleArc(center, rho, math.atan2(a[1], a[0]), math.atan2(b[1], b[0]))
            if pieces:
                pieces.append(arc)
            else:
                # the closing corner's fillet goes last
                closing = arc
        pieces.append(trimmed)
    if 0 in fillets:
        pieces.append(closing)

    logger.info('Filleted %d corner(s) with radius %g', len(fillets), rho)
    return build_curve(pieces, tolerances=curve.tolerances, oracle_points=curve.oracle_points)


def hausdorff_distance(curve_a, curve_b, n=4096):
    """
    Two-sided Hausdorff distance between the boundaries, from n arclength samples
    of each curve projected exactly onto the other.
    """
    _, pts_a = curve_a.sample(n)
    _, pts_b = curve_b.sample(n)
    _, _, d_ab = curve_b.oracle.project(pts_a)
    _, _, d_ba = curve_a.oracle.project(pts_b)
    return float(max(d_ab.max(), d_ba.max()))
