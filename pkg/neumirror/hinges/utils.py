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
from scipy import optimize

from neumirror.core.constants import Family, Level, Side, TWO_PI
from neumirror.core.rng import path_generator
from neumirror.geometry.exceptions import NoIntersection as LineMissesDomain, TangentLine
from neumirror.geometry.models import LineRepr, Vec2
from neumirror.geometry.utils import line_boundary_intersections, reflect_points
from neumirror.hinges.exceptions import (
    DegenerateChord,
    ExtremalPointError,
    FamilyViolation,
    HingeRayViolation,
    MultipleIntersections,
    NoIntersection,
    NotAdmissible,
    OnMirror,
    TangentialIntersection,
)
from neumirror.hinges.models import Chord, Hinge, HingeInterval

logger = logging.getLogger(__name__)

BISECTION_STEPS = 60
END_EXCLUSION = 1e-6
# floor of the activity slack, as a fraction of tol_boundary
END_SLACK_FLOOR = 1e-4


##
# Activity and hinges
##

def reflected_depth(curve, chord, s):
    """
    Signed depth of the reflections of C(s) across the chord line; the points with
    depth >= -activity_slack are the active ones.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    pts = curve.point_at(s)
    refl = reflect_points(pts, np.broadcast_to(np.asarray(chord.P), pts.shape),
                          np.full(len(s), chord.angle))
    return curve.oracle.signed_distance(refl)


def activity_slack(curve, chord, pts):
    """
    Tolerance on the reflected depth of boundary points.  It is tol_boundary scaled
    by the distance to the nearer chord end over the diameter, so the neighbours of
    P and Q, which all reflect to within tol_boundary of the boundary, are judged on
    their actual side.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    ends = np.minimum(np.linalg.norm(pts - np.asarray(chord.P), axis=1),
                      np.linalg.norm(pts - np.asarray(chord.Q), axis=1))
    return curve.tol_boundary * np.clip(ends / curve.diameter, END_SLACK_FLOOR, 1.0)


def _mirror_offset(chord, pts):
    return np.abs((pts - np.asarray(chord.P)).dot(np.asarray(chord.m)))


def is_active(curve, chord, s_A):
    A = curve.point_at(float(s_A))
    if _mirror_offset(chord, A[None, :])[0] <= curve.tol_boundary:
        raise OnMirror('A=({0:.6g}, {1:.6g}) is on the mirror'.format(*A), s_A=float(s_A))
    depth = reflected_depth(curve, chord, s_A)[0]
    return bool(depth >= -activity_slack(curve, chord, A)[0])


def hinge_arrays(curve, chord, s):
    """
    Vectorized hinge data for boundary points C(s).  Points on the mirror come back
    inactive.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    tol = curve.tolerances
    A = curve.point_at(s)
    T = curve.tangent_at(s)
    n = curve.normal_at(s)
    p = np.asarray(chord.p)
    P = np.asarray(chord.P)

    on_mirror = _mirror_offset(chord, A) <= curve.tol_boundary
    depth = reflected_depth(curve, chord, s)
    active = (depth >= -activity_slack(curve, chord, A)) & ~on_mirror
    parallel = np.abs(T.dot(p)) >= 1.0 - tol.parallel

    pn = n.dot(p)
    safe_pn = np.where(np.abs(pn) > 1e-300, pn, 1e-300)
    tau = np.einsum('ij,ij->i', A - P, n) / safe_pn
    H = P + tau[:, None] * p
    upper = tau >= chord.length
    d = np.where(upper, np.abs(tau - chord.length), np.abs(tau))
    left = chord.side(A) > 0

    return {
        's': s,
        'A': A,
        'H': H,
        'tau': tau,
        'd': d,
        'active': active,
        'exists': active & ~parallel,
        'left': left,
        'upper': upper,
    }


def hinge_of(curve, chord, s_A):
    """
    The hinge of the boundary point at s_A, or None when the point is inactive or
    its tangent is parallel to the mirror.
    """
    s_A = float(s_A) % curve.total_length
    A = curve.point_at(s_A)
    if _mirror_offset(chord, A[None, :])[0] <= curve.tol_boundary:
        raise OnMirror('A=({0:.6g}, {1:.6g}) is on the mirror'.format(*A), s_A=s_A)
    data = hinge_arrays(curve, chord, [s_A])
    if not data['exists'][0]:
        return None
    return Hinge(
        s_A=s_A,
        A=Vec2.of(data['A'][0]),
        H=Vec2.of(data['H'][0]),
        side=Side.LEFT if data['left'][0] else Side.RIGHT,
        level=Level.UPPER if data['upper'][0] else Level.LOWER,
        d=float(data['d'][0]),
        tau=float(data['tau'][0]),
    )


def boundary_offsets(chord, n, cluster):
    """
    Offsets from P, counterclockwise, over the whole boundary: uniform, plus
    geometric clusters at both ends of each side.
    """
    L = chord.curve.total_length
    t_q = chord.right_length
    base = np.linspace(0.0, L, int(n), endpoint=False)
    geo = L / float(n) * np.logspace(0, -8, int(cluster))
    ends = np.concatenate([geo, t_q - geo, t_q + geo, L - geo])
    offsets = np.concatenate([base, ends, [t_q]])
    offsets = offsets[(offsets >= 0) & (offsets < L)]
    return np.unique(offsets)


def scan_hinges(curve, chord, n=2000):
    """
    Hinge classification at n uniform boundary samples, for export.
    Columns: s_A, active, side, level, d (NaN when no hinge exists).
    """
    offsets = np.linspace(0.0, curve.total_length, int(n), endpoint=False)[1:]
    offsets = offsets[np.abs(offsets - chord.right_length) > 0.5 * curve.total_length / n]
    s = (chord.s_P + offsets) % curve.total_length
    data = hinge_arrays(curve, chord, s)
    rows = []
    for i in range(len(s)):
        exists = bool(data['exists'][i])
        rows.append({
            's_A': float(s[i]),
            'active': bool(data['active'][i]),
            'side': Side.LEFT if data['left'][i] else Side.RIGHT,
            'level': (Level.UPPER if data['upper'][i] else Level.LOWER) if exists else '',
            'd': float(data['d'][i]) if exists else float('nan'),
        })
    return rows


def _bisect(func, a, b, fa, tol=0.0):
    """
    Vectorized bisection of sign changes of func on brackets [a, b], down to a
    bracket width of tol or at most BISECTION_STEPS halvings.
    """
    a = a.copy()
    b = b.copy()
    steps = BISECTION_STEPS
    width = float(np.max(b - a)) if len(a) else 0.0
    if tol > 0 and width > tol:
        steps = min(steps, int(math.ceil(math.log2(width / tol))))
    elif tol > 0:
        steps = 0
    for _ in range(steps):
        mid = 0.5 * (a + b)
        fm = func(mid)
        same = np.sign(fm) == np.sign(fa)
        a = np.where(same, mid, a)
        fa = np.where(same, fm, fa)
        b = np.where(same, b, mid)
    return 0.5 * (a + b)


def hinge_intervals(curve, chord, n=2000, cluster=40):
    """
    Exact piecewise-constant hinge classification of the boundary.

    The boundary is cut at P, Q, the corners, the points where activity changes
    and the points where the tangent is parallel to the mirror.  Between cuts the
    activity, side and level cannot change; each piece is classified at its
    middle.  Offsets are counterclockwise arclengths from P.
    """
    L = curve.total_length
    t_q = chord.right_length
    offsets = boundary_offsets(chord, n, cluster)
    p = np.asarray(chord.p)

    def act(t):
        s = chord.s_P + t
        return (reflected_depth(curve, chord, s) +
                activity_slack(curve, chord, curve.point_at(s)))

    def par(t):
        return curve.normal_at(chord.s_P + t).dot(p)

    cuts = [0.0, t_q, L]
    cuts.extend(chord.offset_R(curve.corner_s).tolist())
    for func in (act, par):
        values = func(offsets)
        change = np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]
        if len(change):
            cuts.extend(_bisect(func, offsets[change], offsets[change + 1],
                                values[change], tol=0.1 * curve.tol_root).tolist())

    cuts = np.unique(np.clip(cuts, 0.0, L))
    cuts = cuts[np.concatenate([[True], np.diff(cuts) > curve.tol_root])]
    mids = 0.5 * (cuts[:-1] + cuts[1:])
    data = hinge_arrays(curve, chord, chord.s_P + mids)
    pn = par(mids)

    ret = []
    for i in range(len(mids)):
        exists = bool(data['exists'][i]) and abs(pn[i]) > curve.tolerances.parallel
        ret.append(HingeInterval(
            s_from=float((chord.s_P + cuts[i]) % L),
            s_to=float((chord.s_P + cuts[i + 1]) % L),
            active=bool(data['active'][i]),
            exists=exists,
            side=Side.LEFT if mids[i] > t_q else Side.RIGHT,
            level=Level.UPPER if pn[i] < 0 else Level.LOWER,
        ))
    return ret


def hinge_summary(intervals):
    """
    The set of (side, level) pairs carried by at least one hinge.
    """
    return {(iv.side, iv.level) for iv in intervals if iv.exists}


def has_hinge(curve, chord, side, level, n=2000):
    return (side, level) in hinge_summary(hinge_intervals(curve, chord, n=n))


##
# Extremal points
##

def _expected_level(family):
    return Level.LOWER if family in Family.LOWER else Level.UPPER


def extremal_points(curve, chord, family, n=2000):
    """
    The extremal active points of a chord in one of the four families.

    A_right is the single point of the right boundary whose reflection lands on the
    left boundary, A_left is that reflection.  Returns a dict with A_left, H_left,
    A_right and H_right.
    """
    if family not in Family.ALL:
        raise FamilyViolation('Unknown family `{0}`'.format(family))

    L = curve.total_length
    t_q = chord.right_length
    margin = END_EXCLUSION * L
    offsets = np.linspace(margin, t_q - margin, int(n))
    if len(offsets) < 2 or t_q <= 2 * margin:
        raise NoIntersection('Right boundary is empty', chord=chord.to_dict())

    g = reflected_depth(curve, chord, chord.s_P + offsets)
    scale = curve.diameter
    if np.all(np.abs(g) < 1e-9 * scale):
        raise TangentialIntersection('Right boundary lies on the reflected left boundary',
                                     chord=chord.to_dict())

    change = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]
    if len(change) == 0:
        raise NoIntersection(chord=chord.to_dict())
    if len(change) > 1:
        raise MultipleIntersections('{0} crossings'.format(len(change)),
                                    chord=chord.to_dict(),
                                    s=[float((chord.s_P + offsets[i]) % L) for i in change])

    i = change[0]
    t_cross = optimize.brentq(lambda t: reflected_depth(curve, chord, chord.s_P + t)[0],
                              offsets[i], offsets[i + 1], xtol=curve.tol_root)
    s_right = (chord.s_P + t_cross) % L
    A_right = curve.point_at(s_right)
    A_left = reflect_points(A_right[None, :], np.asarray(chord.P)[None, :],
                            [chord.angle])[0]
    s_left = float(curve.oracle.locate(A_left[None, :])[0])

    # crossing angle between the boundary and the reflected boundary
    t_r = curve.tangent_at(s_right)
    t_l = curve.tangent_at(s_left)
    m = np.asarray(chord.m)
    t_l_refl = t_l - 2.0 * t_l.dot(m) * m
    crossing = abs(t_r[0] * t_l_refl[1] - t_r[1] * t_l_refl[0])
    if crossing < curve.tolerances.angle:
        raise TangentialIntersection('Crossing angle {0:.3g}'.format(crossing),
                                     chord=chord.to_dict())

    H_left = hinge_of(curve, chord, s_left)
    H_right = hinge_of(curve, chord, s_right)
    level = _expected_level(family)
    for name, h in (('left', H_left), ('right', H_right)):
        if h is None or h.level != level:
            raise HingeRayViolation('{0} tangent does not meet the {1} ray'.format(name, level),
                                    chord=chord.to_dict())

    if H_left.d <= H_right.d:
        raise TangentialIntersection('d(H_left)={0:.6g} <= d(H_right)={1:.6g}'.format(
            H_left.d, H_right.d), chord=chord.to_dict())

    return {
        'A_left': Vec2.of(A_left),
        'H_left': H_left,
        'A_right': Vec2.of(A_right),
        'H_right': H_right,
    }


##
# Chart and vector fields
##

def is_admissible(special, chord, tol=None):
    tol = special.curve.tolerances.family if tol is None else tol
    if not special.alpha - tol <= chord.angle <= special.alpha_primed + tol:
        return False
    u1 = special.u1_of(chord.s_P)
    u2 = special.u2_of(chord.s_Q)
    return u1 <= special.ubar1 + tol and u2 <= special.ubar2 + tol


def phi(special, chord):
    """
    Chart coordinates (u1, u2) of an admissible chord.
    """
    if not is_admissible(special, chord):
        raise NotAdmissible('{0!r} is not admissible for alpha={1:.6g}'.format(
            chord, special.alpha), chord=chord.to_dict())
    return special.u1_of(chord.s_P), special.u2_of(chord.s_Q)


def phi_inv(special, u1, u2):
    tol = special.curve.tol_root
    if not (-tol <= u1 <= special.ubar1 + tol and -tol <= u2 <= special.ubar2 + tol):
        raise NotAdmissible('u=({0:.6g}, {1:.6g}) is outside [0, {2:.6g}] x [0, {3:.6g}]'.format(
            u1, u2, special.ubar1, special.ubar2))
    return Chord(special.curve, special.s_P_of(u1), special.s_Q_of(u2))


def _endpoint_normals(curve, chord):
    tol = curve.tolerances.degenerate
    p = np.asarray(chord.p)
    pn_P = curve.normal_at(chord.s_P).dot(p)
    pn_Q = curve.normal_at(chord.s_Q).dot(p)
    if abs(pn_P) < tol or abs(pn_Q) < tol:
        raise DegenerateChord('p.n(P)={0:.3g}, p.n(Q)={1:.3g}'.format(pn_P, pn_Q),
                              chord=chord.to_dict())
    return pn_P, pn_Q


def _boundary_normal(curve, point):
    s = curve.oracle.locate(np.asarray([point], dtype=float))[0]
    return curve.normal_at(s)


def field_F(curve, chord, X, V, n_X=None):
    """
    Rate of change of (u1, u2) per unit of local time of X on the boundary.
    """
    pn_P, pn_Q = _endpoint_normals(curve, chord)
    X = np.asarray(X, dtype=float)
    n = _boundary_normal(curve, X) if n_X is None else np.asarray(n_X, dtype=float)
    f1 = -(X - np.asarray(chord.P)).dot(n) / (pn_P * V)
    f2 = (X - np.asarray(chord.Q)).dot(n) / (pn_Q * V)
    return float(f1), float(f2)


def field_G(curve, chord, Y, V, n_Y=None):
    """
    Rate of change of (u1, u2) per unit of local time of Y on the boundary.
    """
    pn_P, pn_Q = _endpoint_normals(curve, chord)
    Y = np.asarray(Y, dtype=float)
    n = _boundary_normal(curve, Y) if n_Y is None else np.asarray(n_Y, dtype=float)
    g1 = (Y - np.asarray(chord.P)).dot(n) / (pn_P * V)
    g2 = -(Y - np.asarray(chord.Q)).dot(n) / (pn_Q * V)
    return float(g1), float(g2)


##
# Families
##

def normal_direction_angle(curve, s, flip=False):
    """
    Angle in [0, 2pi) of n(s), or of -n(s) when flip is set.
    """
    n = curve.normal_at(s)
    if flip:
        n = -n
    return math.atan2(n[1], n[0]) % TWO_PI


def family_angle_bounds(special, family, s):
    """
    Open angle range of chords of an unprimed family through the point at s.
    """
    curve = special.curve
    if family == Family.P1_P3:
        return special.alpha, normal_direction_angle(curve, s)
    elif family == Family.Q4_Q6:
        return special.alpha, normal_direction_angle(curve, s, flip=True)
    raise FamilyViolation('`{0}` is not an unprimed family'.format(family))


def chord_through(curve, s, angle, lower=True):
    """
    The chord at `angle` through the boundary point at s, which is its P when
    `lower` is set and its Q otherwise.
    """
    line = LineRepr(angle, curve.point_at(s))
    try:
        s_a, s_b = line_boundary_intersections(curve, line)
    except (LineMissesDomain, TangentLine) as e:
        raise NotAdmissible('No chord at angle {0:.6g} through s={1:.6g}: {2}'.format(
            angle, s, e.detail))
    if lower:
        return Chord(curve, s, s_b)
    return Chord(curve, s_a, s)


def in_family(special, chord, family, tol=None):
    curve = special.curve
    tol = curve.tolerances.family if tol is None else tol
    if family in Family.PRIMED:
        mirror = special.mirrored
        return in_family(mirror, mirror_chord(mirror.curve, chord), Family.unprimed(family), tol)
    if family == Family.P1_P3:
        u = special.u1_of(chord.s_P)
        if not 0 < u < special.u_of('P3'):
            return False
        lo, hi = family_angle_bounds(special, family, chord.s_P)
    else:
        u = special.u2_of(chord.s_Q)
        if not special.u_of('Q4') < u < special.ubar2:
            return False
        lo, hi = family_angle_bounds(special, family, chord.s_Q)
    return lo + tol < chord.angle < hi - tol


def mirror_chord(target_curve, chord):
    """
    The x -> -x image of a chord, as a chord of `target_curve`.
    """
    L = target_curve.total_length
    return Chord(target_curve, (L - chord.s_P) % L, (L - chord.s_Q) % L)


def _family_range(special, family):
    if family == Family.P1_P3:
        return 0.0, special.u_of('P3')
    return special.u_of('Q4'), special.ubar2


def sample_family(special, family, n_pos, n_ang, buffer=None):
    """
    Cell-centred grid of chords of a family: n_pos positions of the pivot point
    times n_ang angles strictly inside the open angle range.
    """
    if family in Family.PRIMED:
        mirror = special.mirrored
        chords = sample_family(mirror, Family.unprimed(family), n_pos, n_ang, buffer)
        return [mirror_chord(special.curve, c) for c in chords]
    if family not in Family.ALL:
        raise FamilyViolation('Unknown family `{0}`'.format(family))

    curve = special.curve
    buffer = curve.tolerances.buffer if buffer is None else buffer
    lower = family == Family.P1_P3
    u_lo, u_hi = _family_range(special, family)
    chords = []
    for i in range(int(n_pos)):
        u = u_lo + (i + 0.5) / n_pos * (u_hi - u_lo)
        s = special.s_P_of(u) if lower else special.s_Q_of(u)
        lo, hi = family_angle_bounds(special, family, s)
        lo, hi = lo + buffer, hi - buffer
        if hi <= lo:
            continue
        for j in range(int(n_ang)):
            angle = lo + (j + 0.5) / n_ang * (hi - lo)
            try:
                chords.append(chord_through(curve, s, angle, lower=lower))
            except NotAdmissible as e:
                logger.debug('Skipping family chord: %s', e.detail)
    return chords


def random_family_chords(special, family, count, seed=0, buffer=None):
    """
    `count` chords drawn uniformly in (position, angle) from a family.
    """
    if family in Family.PRIMED:
        mirror = special.mirrored
        chords = random_family_chords(mirror, Family.unprimed(family), count, seed, buffer)
        return [mirror_chord(special.curve, c) for c in chords]

    curve = special.curve
    buffer = curve.tolerances.buffer if buffer is None else buffer
    rng = path_generator(seed, 0)
    lower = family == Family.P1_P3
    u_lo, u_hi = _family_range(special, family)
    chords = []
    attempts = 0
    while len(chords) < count and attempts < 20 * count:
        attempts += 1
        u = rng.uniform(u_lo, u_hi)
        s = special.s_P_of(u) if lower else special.s_Q_of(u)
        lo, hi = family_angle_bounds(special, family, s)
        if hi - lo <= 2 * buffer:
            continue
        try:
            chords.append(chord_through(curve, s, rng.uniform(lo + buffer, hi - buffer),
                                        lower=lower))
        except NotAdmissible:
            continue
    return chords


##
# Sampled property checks
##

def check_extremal_monotonicity(special, family, n_chords=100, n_scan=2000, seed=0):
    """
    On random family chords, every hinge of the family's level satisfies
    d >= d(H_left) on the left and d <= d(H_right) on the right.
    """
    curve = special.curve
    level_upper = _expected_level(family) == Level.UPPER
    slack = 1e-9 * curve.diameter
    violations = []
    checked = 0
    for chord in random_family_chords(special, family, n_chords, seed=seed):
        ext = extremal_points(curve, chord, family, n=n_scan)
        offsets = np.linspace(0.0, curve.total_length, int(n_scan), endpoint=False)[1:]
        data = hinge_arrays(curve, chord, chord.s_P + offsets)
        mask = data['exists'] & (data['upper'] == level_upper)
        bad_left = mask & data['left'] & (data['d'] < ext['H_left'].d - slack)
        bad_right = mask & ~data['left'] & (data['d'] > ext['H_right'].d + slack)
        checked += 1
        if np.any(bad_left) or np.any(bad_right):
            violations.append({
                'chord': chord.to_dict(),
                'left': int(np.sum(bad_left)),
                'right': int(np.sum(bad_right)),
            })
    return {'family': family, 'checked': checked, 'violations': violations}


def extremal_lipschitz(special, family, n=6, margin=0.05):
    """
    Ratio |A_left - A_left~| / (|P - P~| + |Q - Q~|) over neighbouring grid chords
    of a family, kept `margin` radians inside its angle range.
    """
    curve = special.curve
    chords = sample_family(special, family, n, n, buffer=margin)
    extremals = []
    for chord in chords:
        try:
            extremals.append((chord, extremal_points(curve, chord, family)))
        except ExtremalPointError:
            extremals.append((chord, None))
    ratios = []
    for (c0, e0), (c1, e1) in zip(extremals[:-1], extremals[1:]):
        if e0 is None or e1 is None:
            continue
        moved = (c0.P - c1.P).norm() + (c0.Q - c1.Q).norm()
        if moved <= 1e-12:
            continue
        ratios.append((e0['A_left'] - e1['A_left']).norm() / moved)
    return max(ratios) if ratios else float('nan')


def check_normal_signs(special, n=40):
    """
    p.n(P) > 0 > p.n(Q) on a grid of admissible chords.
    """
    curve = special.curve
    checked = 0
    violations = []
    for i in range(n):
        for j in range(n):
            u1 = (i + 0.5) / n * special.ubar1
            u2 = (j + 0.5) / n * special.ubar2
            chord = phi_inv(special, u1, u2)
            if not is_admissible(special, chord):
                continue
            checked += 1
            p = np.asarray(chord.p)
            pn_P = curve.normal_at(chord.s_P).dot(p)
            pn_Q = curve.normal_at(chord.s_Q).dot(p)
            if not pn_P > 0 > pn_Q:
                violations.append({'chord': chord.to_dict(), 'pn_P': float(pn_P),
                                   'pn_Q': float(pn_Q)})
    return {'checked': checked, 'violations': violations}
