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

from neumirror.core.constants import Family
from neumirror.core.options import Sampling
from neumirror.geometry.exceptions import NoIntersection, TangentLine
from neumirror.geometry.models import LineRepr
from neumirror.geometry.utils import line_boundary_intersections
from neumirror.hinges.exceptions import NotAdmissible
from neumirror.hinges.models import Chord
from neumirror.hinges.utils import chord_through, is_admissible
from neumirror.lyapunov.exceptions import ArcsIntersect, CoincidentPoints, ConnectorImpossible
from neumirror.lyapunov.models import LyapunovSet
from neumirror.lyapunov.ode import integrate_ode_arc

logger = logging.getLogger(__name__)


def _arc_alpha_plain(special, n):
    curve = special.curve
    u3, u4 = special.u_of('P3'), special.u_of('P4')
    points = [[u3, special.u_of('Q3')]]
    for i in range(1, int(n) - 1):
        u1 = u3 + (u4 - u3) * i / (n - 1.0)
        chord = chord_through(curve, special.s_P_of(u1), special.alpha, lower=True)
        points.append([special.u1_of(chord.s_P), special.u2_of(chord.s_Q)])
    points.append([u4, special.u_of('Q4')])
    return np.array(points)


def arc_alpha(curve, special, which='plain', n=None):
    """
    Chart image of the angle-alpha chords with P between P3 and P4 (angle alpha'
    between P3' and P4' for `which='primed'`), from u3 to u4.
    """
    n = Sampling.DEFAULTS['arc_alpha'] if n is None else int(n)
    if which == 'plain':
        return _arc_alpha_plain(special, n)
    elif which == 'primed':
        arc = _arc_alpha_plain(special.mirrored, n)
        return np.column_stack([special.ubar1 - arc[:, 0], special.ubar2 - arc[:, 1]])
    raise ValueError('which must be `plain` or `primed`, got `{0}`'.format(which))


def connector(u_from, u_to, horizontal_first=True):
    """
    The axis-parallel L from u_from to u_to.
    """
    if horizontal_first:
        corner = [u_to[0], u_from[1]]
    else:
        corner = [u_from[0], u_to[1]]
    return np.array([list(u_from), corner, list(u_to)], dtype=float)


def _dedupe(polyline, tol):
    keep = np.ones(len(polyline), dtype=bool)
    keep[1:] = np.linalg.norm(np.diff(polyline, axis=0), axis=1) > tol
    return polyline[keep]


def check_simple(loop):
    """
    Raise ArcsIntersect when two non-adjacent edges of the closed loop cross or touch.
    """
    a = loop[:-1]
    b = loop[1:]
    n = len(a)
    d = b - a
    for i in range(n - 2):
        j = np.arange(i + 2, n if i > 0 else n - 1)
        if not len(j):
            continue
        ai, di = a[i], d[i]
        o1 = di[0] * (a[j, 1] - ai[1]) - di[1] * (a[j, 0] - ai[0])
        o2 = di[0] * (b[j, 1] - ai[1]) - di[1] * (b[j, 0] - ai[0])
        dj = d[j]
        o3 = dj[:, 0] * (ai[1] - a[j, 1]) - dj[:, 1] * (ai[0] - a[j, 0])
        o4 = dj[:, 0] * (b[i][1] - a[j, 1]) - dj[:, 1] * (b[i][0] - a[j, 0])
        hit = (o1 * o2 < 0) & (o3 * o4 < 0)
        if np.any(hit):
            k = int(j[np.argmax(hit)])
            raise ArcsIntersect('Edges {0} and {1} cross'.format(i, k),
                                edges=[a[i].tolist(), b[i].tolist(), a[k].tolist(),
                                       b[k].tolist()])


def assemble(curve, special, sampling=None):
    """
    Build the Lyapunov set: the two angle-alpha arcs, the four ODE arcs and the two
    connectors, joined into one closed loop.  The returned set carries the special
    points completed with P2, P5, Q2, Q5 and their primes as `lset.special`.
    """
    sampling = sampling or Sampling()
    n = int(sampling.arc_alpha)

    upper = integrate_ode_arc(curve, special, Family.Q4_Q6)
    lower = integrate_ode_arc(curve, special, Family.P1_P3)
    upper_p = integrate_ode_arc(curve, special, Family.Q4_Q6_PRIMED)
    lower_p = integrate_ode_arc(curve, special, Family.P1_P3_PRIMED)

    u2, u5 = lower.u_end, upper.u_end
    u2p, u5p = lower_p.u_end, upper_p.u_end

    if not (u5[0] <= u2p[0] and u2p[1] <= u5[1]):
        raise ConnectorImpossible('P5 < P2\' and Q2\' < Q5 fail: u5={0}, u2\'={1}'.format(
            u5.tolist(), u2p.tolist()))
    if not (u2[0] <= u5p[0] and u5p[1] <= u2[1]):
        raise ConnectorImpossible('P5\' > P2 and Q2 > Q5\' fail: u5\'={0}, u2={1}'.format(
            u5p.tolist(), u2.tolist()))

    arcs = {
        'u2-u3': lower.polyline[::-1],
        'u3-u4': arc_alpha(curve, special, 'plain', n),
        'u4-u5': upper.polyline,
        "u5-u2'": connector(u5, u2p, horizontal_first=True),
        "u2'-u3'": lower_p.polyline[::-1],
        "u3'-u4'": arc_alpha(curve, special, 'primed', n),
        "u4'-u5'": upper_p.polyline,
        "u5'-u2": connector(u5p, u2, horizontal_first=True),
    }
    corners = {
        'u2': u2, 'u3': arcs['u3-u4'][0], 'u4': arcs['u3-u4'][-1], 'u5': u5,
        "u2'": u2p, "u3'": arcs["u3'-u4'"][0], "u4'": arcs["u3'-u4'"][-1], "u5'": u5p,
    }
    a_star = {arc.family: arc.a_star for arc in (upper, lower, upper_p, lower_p)}
    scale = max(special.ubar1, special.ubar2)
    lset = LyapunovSet(arcs, corners, a_star, (special.ubar1, special.ubar2),
                       tol=1e-9 * scale)

    gap = lset.closure_gap
    if gap > 1e-7 * scale:
        raise ArcsIntersect('Loop does not close: gap {0:.3g}'.format(gap))
    check_simple(_dedupe(lset.loop, 1e-12 * scale))

    lset.special = special.with_points(
        P2=special.s_P_of(u2[0]), Q2=special.s_Q_of(u2[1]),
        P5=special.s_P_of(u5[0]), Q5=special.s_Q_of(u5[1]),
        P2_p=special.s_P_of(u2p[0]), Q2_p=special.s_Q_of(u2p[1]),
        P5_p=special.s_P_of(u5p[0]), Q5_p=special.s_Q_of(u5p[1]),
    )
    logger.info('Lyapunov set: %d loop vertices, u2=%s, u5=%s, u2\'=%s, u5\'=%s',
                len(lset.loop), u2.round(6).tolist(), u5.round(6).tolist(),
                u2p.round(6).tolist(), u5p.round(6).tolist())
    return lset


##
# The pair set T
##

def bisector(x, y):
    """
    The perpendicular bisector of x and y as a line.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = y - x
    norm = np.linalg.norm(m)
    if norm == 0:
        raise CoincidentPoints('x = y = {0}'.format(x.tolist()))
    angle = math.atan2(m[0], -m[1]) % math.pi
    return LineRepr(angle, 0.5 * (x + y))


def mirror_chord_of(curve, x, y):
    """
    The chord cut out by the bisector of x and y, or None when it misses the domain.
    """
    line = bisector(x, y)
    try:
        s_P, s_Q = line_boundary_intersections(curve, line)
    except (NoIntersection, TangentLine):
        return None
    try:
        return Chord(curve, s_P, s_Q)
    except NotAdmissible:
        return None


def pair_in_T(curve, special, lset, x, y):
    """
    True when the mirror of (x, y) is admissible, its chart point lies in the
    Lyapunov set and y is to the right of x.
    """
    chord = mirror_chord_of(curve, x, y)
    if chord is None or not is_admissible(special, chord):
        return False
    if not float(y[0]) - float(x[0]) > 0:
        return False
    u = (special.u1_of(chord.s_P), special.u2_of(chord.s_Q))
    return bool(lset.contains(np.asarray(u)))


def _mirror_lines(xs, ys):
    m = ys - xs
    norms = np.linalg.norm(m, axis=1)
    if np.any(norms == 0):
        raise CoincidentPoints('{0} coincident pairs'.format(int(np.sum(norms == 0))))
    return 0.5 * (xs + ys), np.arctan2(m[:, 0], -m[:, 1]) % math.pi


def chart_points(curve, special, xs, ys):
    """
    Chart points of the mirrors of the pairs (xs[i], ys[i]): returns (u, defined),
    where `defined` is False for pairs whose mirror is not admissible.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    mid, angles = _mirror_lines(xs, ys)

    u = np.full((len(xs), 2), np.nan)
    defined = np.zeros(len(xs), dtype=bool)
    inside = curve.oracle.contains(mid)
    if not np.any(inside):
        return u, defined
    s_P, s_Q = curve.oracle.chords(mid[inside], angles[inside])

    tol = curve.tolerances.family
    L = curve.total_length
    u1 = np.mod(s_P - special.s('P1'), L)
    u2 = np.mod(special.s("Q6'") - s_Q, L)
    ang = angles[inside]
    ok = ((ang >= special.alpha - tol) & (ang <= special.alpha_primed + tol) &
          (u1 <= special.ubar1 + tol) & (u2 <= special.ubar2 + tol))
    u[inside] = np.column_stack([u1, u2])
    defined[inside] = ok
    return u, defined


def pairs_in_T(curve, special, lset, xs, ys):
    """
    Vectorized pair_in_T.  Pairs whose bisector misses the domain interior are not in T.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    _mirror_lines(xs, ys)

    ret = np.zeros(len(xs), dtype=bool)
    candidates = ys[:, 0] - xs[:, 0] > 0
    if not np.any(candidates):
        return ret
    u, defined = chart_points(curve, special, xs[candidates], ys[candidates])
    inside = np.zeros(len(u), dtype=bool)
    if np.any(defined):
        inside[defined] = lset.contains(u[defined])
    ret[candidates] = inside
    return ret
