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

import numpy as np
from scipy import integrate, optimize

from neumirror.core.constants import Family, TWO_PI
from neumirror.geometry.exceptions import FlatMatch
from neumirror.geometry.utils import find_by_normal_angle, reflect_points
from neumirror.hinges.exceptions import ExtremalPointError, FamilyViolation, NotAdmissible
from neumirror.hinges.utils import (
    extremal_points,
    field_F,
    field_G,
    normal_direction_angle,
    phi_inv,
)
from neumirror.lyapunov.exceptions import NonPositiveRhs, NoTermination, OrderingViolated

logger = logging.getLogger(__name__)

# Chords this close to angle alpha may use the limiting extremal point
EXTENSION_WINDOW = 1e-4

RTOL = 1e-9
ATOL = 1e-12
MIN_STEP_FRACTION = 1e-9

OdeArc = collections.namedtuple('OdeArc', ['family', 'polyline', 'u_end', 'a_star',
                                           'min_rhs', 'min_angle_margin'])


def is_lower(family):
    return family in Family.LOWER


def _flip(special, u):
    return np.array([special.ubar1 - u[0], special.ubar2 - u[1]])


def normal_gap(curve, chord, lower):
    """
    Signed angle from the chord direction to n(P) (lower) or -n(Q) (upper), in
    (-pi, pi].  Negative inside the family, zero when the chord is normal there.
    """
    s = chord.s_P if lower else chord.s_Q
    target = normal_direction_angle(curve, s, flip=not lower)
    return (chord.angle - target + math.pi) % TWO_PI - math.pi


def _limit_point(curve, beta):
    try:
        s, _ = find_by_normal_angle(curve, beta % TWO_PI)
    except FlatMatch as e:
        lo, hi = e.payload['interval']
        s = 0.5 * (lo + hi)
    return s


def _extended_extremals(curve, chord, lower):
    """
    Limits of the extremal points as the chord tends to angle alpha: the point
    whose tangent is parallel to the chord, and its reflection pulled onto the
    boundary.
    """
    beta = chord.angle - 0.5 * math.pi if lower else chord.angle + 0.5 * math.pi
    s_t = _limit_point(curve, beta)
    T = curve.point_at(s_t)
    R = reflect_points(T[None, :], np.asarray(chord.P)[None, :], [chord.angle])[0]
    s_r = float(curve.oracle.locate(R[None, :])[0])
    if lower:
        return s_t, s_r
    return s_r, s_t


def extremal_arclengths(special, chord, family):
    """
    Arclengths (s_left, s_right) of the extremal points of a chord in an unprimed
    family, falling back to the limiting points next to angle alpha.
    """
    curve = special.curve
    try:
        ext = extremal_points(curve, chord, family)
    except ExtremalPointError as e:
        if chord.angle - special.alpha > EXTENSION_WINDOW:
            raise
        logger.debug('Using limiting extremal points at angle %.9g: %s', chord.angle, e.detail)
        return _extended_extremals(curve, chord, is_lower(family))
    return ext['H_left'].s_A, ext['H_right'].s_A


def _plain_rhs(special, u, family):
    curve = special.curve
    chord = phi_inv(special, u[0], u[1])
    s_left, s_right = extremal_arclengths(special, chord, family)
    A_left, A_right = curve.point_at(s_left), curve.point_at(s_right)
    n_left, n_right = curve.normal_at(s_left), curve.normal_at(s_right)
    if is_lower(family):
        # left point takes the role of Y, right point of X, with d|L| = -da
        g = field_G(curve, chord, A_left, 1.0, n_Y=n_left)
        f = field_F(curve, chord, A_right, 1.0, n_X=n_right)
        return np.array([g[0] - f[0], g[1] - f[1]])
    f = field_F(curve, chord, A_left, 1.0, n_X=n_left)
    g = field_G(curve, chord, A_right, 1.0, n_Y=n_right)
    return np.array([f[0] - g[0], f[1] - g[1]])


def ode_rhs(curve, special, u, family):
    """
    du/da along the ODE arc of a family.

    The upper families move both coordinates up and the lower families move both
    down.  Primed families are evaluated on the mirrored domain.
    """
    if family not in Family.ALL:
        raise FamilyViolation('Unknown family `{0}`'.format(family))
    u = np.asarray(u, dtype=float)
    if family in Family.PRIMED:
        mirror = special.mirrored
        return -_plain_rhs(mirror, _flip(special, u), Family.unprimed(family))
    return _plain_rhs(special, u, family)


def arc_slope(curve, special, u):
    """
    du1/du2 along the upper arc, written directly in terms of the extremal points.
    """
    chord = phi_inv(special, u[0], u[1])
    s_left, s_right = extremal_arclengths(special, chord, Family.Q4_Q6)
    p = np.asarray(chord.p)
    P, Q = np.asarray(chord.P), np.asarray(chord.Q)
    top = 0.0
    bottom = 0.0
    for s in (s_left, s_right):
        A = curve.point_at(s)
        n = curve.normal_at(s)
        top += (A - P).dot(n)
        bottom += (A - Q).dot(n)
    ratio = -curve.normal_at(chord.s_Q).dot(p) / curve.normal_at(chord.s_P).dot(p)
    return float(ratio * top / bottom)


def _start_point(special, family):
    if is_lower(family):
        return np.array([special.u_of('P3'), special.u_of('Q3')])
    return np.array([special.u_of('P4'), special.u_of('Q4')])


def _check_terminal(special, family, u_end, tol_normal):
    curve = special.curve
    lower = is_lower(family)
    chord = phi_inv(special, u_end[0], u_end[1])
    p = np.asarray(chord.p)
    if lower:
        residual = abs(curve.normal_at(chord.s_P).dot(p) - 1.0)
    else:
        residual = abs(curve.normal_at(chord.s_Q).dot(p) + 1.0)
    if residual > tol_normal:
        raise NoTermination('Terminal chord is {0:.3g} away from normal'.format(residual),
                            u=u_end.tolist())

    if lower:
        lo, hi, value, label = 0.0, special.u_of('P3'), u_end[0], 'P1 < P2 < P3'
    else:
        lo, hi, value, label = special.u_of('Q4'), special.ubar2, u_end[1], 'Q4 < Q5 < Q6'
    if not lo < value < hi:
        raise OrderingViolated('{0} fails: {1:.9g} not in ({2:.9g}, {3:.9g})'.format(
            label, value, lo, hi), u=u_end.tolist())
    return residual


def _integrate_plain(special, family, rtol, atol, a_max, max_step):
    curve = special.curve
    lower = is_lower(family)
    sign = -1.0 if lower else 1.0
    y0 = _start_point(special, family)
    a_max = 10.0 * curve.diameter if a_max is None else a_max
    max_step = 0.01 * curve.diameter if max_step is None else max_step
    min_step = MIN_STEP_FRACTION * curve.diameter

    def fun(a, y):
        return _plain_rhs(special, y, family)

    def gap(y):
        return normal_gap(curve, phi_inv(special, y[0], y[1]), lower)

    points = [y0.copy()]
    min_rhs = float('inf')
    min_margin = float('inf')
    a0, y_start = 0.0, y0
    while True:
        solver = integrate.RK45(fun, a0, y_start, a_max, rtol=rtol, atol=atol,
                                max_step=max_step)
        try:
            while solver.status == 'running':
                t_old = solver.t
                solver.step()
                if solver.status == 'failed':
                    raise NoTermination('RK45 step failed at a={0:.6g}'.format(t_old))
                y = solver.y
                g = gap(y)
                if g >= 0:
                    sol = solver.dense_output()
                    a_star = optimize.brentq(lambda a: gap(sol(a)), t_old, solver.t,
                                             xtol=1e-14 * curve.diameter)
                    u_end = sol(a_star)
                    points.append(u_end)
                    return np.array(points), u_end, a_star, min_rhs, min_margin

                oriented = sign * np.asarray(solver.f)
                if np.any(oriented <= 0):
                    raise NonPositiveRhs('du/da = ({0:.6g}, {1:.6g}) at a={2:.6g}'.format(
                        solver.f[0], solver.f[1], solver.t), u=y.tolist(), a=solver.t)
                min_rhs = min(min_rhs, float(np.min(oriented)))
                margin = phi_inv(special, y[0], y[1]).angle - special.alpha
                if margin < -curve.tolerances.family:
                    raise OrderingViolated('Arc chord fell to angle alpha at a={0:.6g}'.format(
                        solver.t), u=y.tolist())
                min_margin = min(min_margin, margin)
                points.append(y.copy())
            raise NoTermination('No normal chord before a={0:.6g}'.format(a_max))
        except (ExtremalPointError, NotAdmissible) as e:
            # a trial stage left the family; restart from the last accepted point
            max_step *= 0.25
            if max_step < min_step:
                raise
            logger.debug('Restarting ODE arc at a=%.6g with max_step=%.3g: %s',
                         solver.t, max_step, e.detail)
            a0, y_start = solver.t, points[-1].copy()


def integrate_ode_arc(curve, special, family, rtol=RTOL, atol=ATOL, a_max=None,
                      max_step=None):
    """
    Integrate the ODE arc of a family from its starting chord at angle alpha until
    the chord becomes normal to the boundary.

    The upper families start at u4 and end at u5, the lower families start at u3 and
    end at u2 (primes alike).  Returns an OdeArc whose polyline runs from the start
    to the end.
    """
    if family not in Family.ALL:
        raise FamilyViolation('Unknown family `{0}`'.format(family))
    plain = special.mirrored if family in Family.PRIMED else special
    plain_family = Family.unprimed(family)

    polyline, u_end, a_star, min_rhs, margin = _integrate_plain(
        plain, plain_family, rtol, atol, a_max, max_step)
    _check_terminal(plain, plain_family, u_end, plain.curve.tolerances.normal)

    if family in Family.PRIMED:
        polyline = np.column_stack([special.ubar1 - polyline[:, 0],
                                    special.ubar2 - polyline[:, 1]])
        u_end = _flip(special, u_end)

    logger.info('ODE arc %s: %d points, a*=%.6g, end=(%.6g, %.6g)',
                family, len(polyline), a_star, u_end[0], u_end[1])
    return OdeArc(family, polyline, u_end, float(a_star), min_rhs, margin)
