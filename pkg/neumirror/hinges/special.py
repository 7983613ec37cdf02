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

from neumirror.core.constants import Level, Side
from neumirror.core.exceptions import InputError
from neumirror.core.options import Sampling
from neumirror.geometry.exceptions import FlatMatch
from neumirror.geometry.utils import find_by_normal_angle
from neumirror.hinges.exceptions import (
    EmptyHingeFreeArc,
    NotAdmissible,
    OrientationViolated,
    SpecialPointsError,
)
from neumirror.hinges.models import SpecialPoints
from neumirror.hinges.utils import (
    boundary_offsets,
    chord_through,
    hinge_arrays,
    hinge_intervals,
    hinge_summary,
)

logger = logging.getLogger(__name__)

FORBIDDEN = frozenset([(Side.LEFT, Level.LOWER), (Side.RIGHT, Level.UPPER)])

# boundary samples per chord, as hinge_scan over these
COARSE_DIVISOR = 10
FINE_DIVISOR = 4
ENDPOINT_GROWTH = 8.0


def is_hinge_free(curve, chord, n=2000, cluster=40):
    """
    True when the chord has no lower-left and no upper-right hinge.
    """
    return not (hinge_summary(hinge_intervals(curve, chord, n=n, cluster=cluster)) & FORBIDDEN)


def sampled_hinge_free(curve, chord, n):
    offsets = boundary_offsets(chord, n, cluster=10)
    data = hinge_arrays(curve, chord, chord.s_P + offsets)
    lower_left = data['left'] & ~data['upper']
    upper_right = ~data['left'] & data['upper']
    return not np.any(data['exists'] & (lower_left | upper_right))


def _bisect_predicate(pred, u_false, u_true, tol):
    while abs(u_true - u_false) > tol:
        mid = 0.5 * (u_false + u_true)
        if pred(mid):
            u_true = mid
        else:
            u_false = mid
    return u_true


def _confirm_end(pred, u_end, u_inner, tol):
    """
    Walks u_end toward u_inner with growing steps until pred holds, then bisects
    back down to tol.
    """
    if pred(u_end):
        return u_end
    span = u_inner - u_end
    u_bad = u_end
    step = tol
    while step < abs(span):
        u = u_end + math.copysign(step, span)
        if pred(u):
            return _bisect_predicate(pred, u_bad, u, tol)
        u_bad = u
        step *= ENDPOINT_GROWTH
    if not pred(u_inner):
        raise EmptyHingeFreeArc('Sampled hinge-free chord at u={0:.6g} has a forbidden '
                                'hinge'.format(u_inner))
    return _bisect_predicate(pred, u_bad, u_inner, tol)


def _hinge_free_arc(curve, alpha, s_P1, s_P6, sampling):
    """
    Chart positions (from P1) of the ends of the largest arc of P between P1 and
    P6 whose angle-alpha chord is hinge-free.

    The scan and the bisection use the sampled check; the exact classification only
    confirms the two ends.
    """
    L = curve.total_length
    u6 = (s_P6 - s_P1) % L
    n = int(sampling.hinge_free_scan)
    positions = (np.arange(n) + 0.5) / n * u6
    coarse = max(int(sampling.hinge_scan) // COARSE_DIVISOR, 100)
    fine = max(int(sampling.hinge_scan) // FINE_DIVISOR, 100)
    tol = curve.tol_root * 10

    def chord_at(u):
        return chord_through(curve, s_P1 + u, alpha, lower=True)

    def sampled(u, samples=fine):
        try:
            return sampled_hinge_free(curve, chord_at(u), samples)
        except NotAdmissible:
            return False

    def refined(u):
        try:
            return is_hinge_free(curve, chord_at(u), n=sampling.hinge_scan,
                                 cluster=sampling.endpoint_cluster)
        except NotAdmissible:
            return False

    free = np.array([sampled(u, coarse) for u in positions], dtype=bool)
    idx = np.nonzero(free)[0]
    if not len(idx):
        raise EmptyHingeFreeArc('No hinge-free angle-{0:.6g} chord among {1} positions'.format(
            alpha, n))
    i0, i1 = int(idx[0]), int(idx[-1])
    while i0 <= i1 and not sampled(positions[i0]):
        i0 += 1
    while i1 >= i0 and not sampled(positions[i1]):
        i1 -= 1
    if i0 > i1:
        raise EmptyHingeFreeArc('Coarse hinge-free chords did not survive refinement')

    if i0 == 0:
        u3 = 0.0 if sampled(0.0) else _bisect_predicate(sampled, 0.0, positions[0], tol)
    else:
        u3 = _bisect_predicate(sampled, positions[i0 - 1], positions[i0], tol)
    if i1 == n - 1:
        u4 = u6 if sampled(u6) else _bisect_predicate(sampled, u6, positions[-1], tol)
    else:
        u4 = _bisect_predicate(sampled, positions[i1 + 1], positions[i1], tol)

    u3 = _confirm_end(refined, u3, positions[i0], tol)
    u4 = _confirm_end(refined, u4, positions[i1], tol)
    logger.debug('Hinge-free arc spans u in [%.9g, %.9g] of [0, %.9g]', u3, u4, u6)
    return u3, u4


def _plain_points(curve, alpha, sampling):
    try:
        s_P1, _ = find_by_normal_angle(curve, alpha)
        s_Q6, _ = find_by_normal_angle(curve, math.pi + alpha)
    except FlatMatch as e:
        raise SpecialPointsError('A special normal lies on a straight piece: {0}'.format(
            e.detail), interval=e.payload.get('interval'))

    try:
        s_Q1 = chord_through(curve, s_P1, alpha, lower=True).s_Q
        s_P6 = chord_through(curve, s_Q6, alpha, lower=False).s_P
    except NotAdmissible as e:
        raise SpecialPointsError(e.detail)

    L = curve.total_length
    if (s_P6 - s_P1) % L <= curve.tol_root:
        raise OrientationViolated('P6 coincides with P1')

    u3, u4 = _hinge_free_arc(curve, alpha, s_P1, s_P6, sampling)
    s_P3 = (s_P1 + u3) % L
    s_P4 = (s_P1 + u4) % L
    return {
        'P1': s_P1,
        'P3': s_P3,
        'P4': s_P4,
        'P6': s_P6,
        'Q1': s_Q1,
        'Q3': chord_through(curve, s_P3, alpha, lower=True).s_Q,
        'Q4': chord_through(curve, s_P4, alpha, lower=True).s_Q,
        'Q6': s_Q6,
    }


def check_orientation(special):
    """
    The ordering and orientation conditions the special points must satisfy.
    """
    u = special.u_of
    tol = special.curve.tol_root
    problems = []
    if not 0 < u('P3') < u('P4') < u('P6'):
        problems.append('P1 < P3 < P4 < P6 fails: u = 0, {0:.6g}, {1:.6g}, {2:.6g}'.format(
            u('P3'), u('P4'), u('P6')))
    if not u('P6') < special.ubar1:
        problems.append('P6 does not precede P1\'')
    if not special.point('P6').x - special.point('P1').x > tol:
        problems.append('(P6 - P1).e1 > 0 fails')
    if not special.point('Q6').x - special.point('Q1').x > tol:
        problems.append('(Q6 - Q1).e1 > 0 fails')
    if not special.point("P6'").x - special.point("P1'").x < -tol:
        problems.append('(P6\' - P1\').e1 < 0 fails')
    if problems:
        raise OrientationViolated('; '.join(problems), problems=problems)


def compute_special_points(curve, alpha, sampling=None):
    """
    P1, P3, P4, P6, Q1, Q3, Q4, Q6 and their primes for the given alpha.

    The primed points are the plain points of the mirrored domain, mapped back.
    """
    sampling = sampling or Sampling()
    alpha = float(alpha)
    if not 0 < alpha < 0.5 * math.pi:
        raise InputError('alpha must lie in (0, pi/2), got {0}'.format(alpha))

    L = curve.total_length
    mirror = curve.mirrored()
    plain = _plain_points(curve, alpha, sampling)
    primed = _plain_points(mirror, alpha, sampling)

    values = dict(plain)
    values.update({name + "'": (L - s) % L for name, s in primed.items()})
    mirror_values = dict(primed)
    mirror_values.update({name + "'": (L - s) % L for name, s in plain.items()})

    mirror_special = SpecialPoints(mirror, alpha, mirror_values)
    special = SpecialPoints(curve, alpha, values, mirror=mirror_special)
    mirror_special._mirror = special

    check_orientation(special)
    logger.info('Special points for alpha=%.6g: %s', alpha, ', '.join(
        '{0}=({1:.4f}, {2:.4f})'.format(k, *special.point(k)) for k in sorted(values)))
    return special


def _line_intersection(a0, a1, b0, b1):
    a0, a1, b0, b1 = (np.asarray(v, dtype=float) for v in (a0, a1, b0, b1))
    da = a1 - a0
    db = b1 - b0
    denom = da[0] * db[1] - da[1] * db[0]
    if abs(denom) < 1e-15:
        return None
    r = b0 - a0
    t = (r[0] * db[1] - r[1] * db[0]) / denom
    return a0 + t * da


def midpoint_residual(special):
    """
    Distance from [P3, Q3] ^ [P6', Q6'] to the midpoint of [P6', Q6'], and from
    [P4, Q4] ^ [P1', Q1'] to the midpoint of [P1', Q1'].
    """
    ret = {}
    for name, (p, q) in (('P3', ("P6'", "Q6'")), ('P4', ("P1'", "Q1'"))):
        chord_p = special.point(name)
        chord_q = special.point('Q' + name[1:])
        a, b = special.point(p), special.point(q)
        x = _line_intersection(chord_p, chord_q, a, b)
        mid = 0.5 * (np.asarray(a) + np.asarray(b))
        ret[name] = float('inf') if x is None else float(np.linalg.norm(x - mid))
    return ret
