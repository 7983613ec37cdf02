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
Euler-projection stepping of reflected Brownian motion and of the mirror coupling.
"""

import logging
import math

import numpy as np

from neumirror.coupling.exceptions import InvalidSimConfig, StepTooLarge
from neumirror.coupling.models import CouplingState, PathRecord, state_row
from neumirror.core.rng import IncrementSource
from neumirror.geometry.exceptions import ProjectionFailure
from neumirror.geometry.utils import reflect_points
from neumirror.hinges.exceptions import DegenerateChord, NotAdmissible
from neumirror.hinges.utils import field_F, field_G, phi_inv
from neumirror.lyapunov.utils import chart_points, pairs_in_T

logger = logging.getLogger(__name__)


def _slack(curve):
    return curve.tol_boundary + 1e-12 * curve.diameter


def step_reflected_batch(curve, xs, dWs, guard=0.25):
    """
    One Euler step with nearest-point projection for a batch of points of the
    closed domain.  Returns (xs_new, dL, n) where dL is the distance moved by the
    projection and n the unit push direction (zero where there was no contact).
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    dWs = np.atleast_2d(np.asarray(dWs, dtype=float))
    sizes = np.linalg.norm(dWs, axis=1)
    limit = guard * curve.diameter
    if np.any(sizes > limit):
        raise StepTooLarge('|dW|={0:.4g} exceeds {1:g} x diameter'.format(
            float(np.max(sizes)), guard), limit=limit)

    raw = xs + dWs
    out = ~curve.oracle.contains(raw)
    ret = raw.copy()
    dL = np.zeros(len(xs))
    n = np.zeros_like(xs)
    if not np.any(out):
        return ret, dL, n

    _, foot, dist = curve.oracle.project(raw[out])
    if np.any(dist > sizes[out] + _slack(curve)):
        k = int(np.argmax(dist - sizes[out]))
        raise ProjectionFailure('Projection moved {0:.4g}, more than the step {1:.4g}'.format(
            float(dist[k]), float(sizes[out][k])), point=raw[out][k].tolist())
    ret[out] = foot
    dL[out] = dist
    safe = np.maximum(dist, 1e-300)[:, None]
    n[out] = (foot - raw[out]) / safe
    return ret, dL, n


def step_reflected(curve, x, dW, guard=0.25):
    """
    Single-point step_reflected: returns (x_new, dL_abs, n_used) with n_used None
    when the step stayed inside.
    """
    ret, dL, n = step_reflected_batch(curve, [x], [dW], guard=guard)
    if dL[0] > 0:
        return ret[0], float(dL[0]), n[0]
    return ret[0], 0.0, None


def mirror_increments(m, dW):
    """
    dZ = dW - 2 m (m . dW), row by row.
    """
    m = np.atleast_2d(m)
    dW = np.atleast_2d(dW)
    return dW - 2.0 * m * np.einsum('ij,ij->i', m, dW)[:, None]


def mirror_angle(m):
    """
    Direction angle of p = i m, in (-pi, pi].
    """
    m = np.asarray(m, dtype=float)
    return np.arctan2(m[..., 0], -m[..., 1])


def _continue_angle(prev, raw):
    return prev + (raw - prev + math.pi) % (2.0 * math.pi) - math.pi


def _chart_point(curve, special, X, Y):
    if special is None:
        return None
    u, defined = chart_points(curve, special, [X], [Y])
    return (float(u[0, 0]), float(u[0, 1])) if defined[0] else None


def initial_state(curve, special, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = y - x
    V = float(np.linalg.norm(d))
    if V == 0:
        raise InvalidSimConfig('Start points coincide')
    m = d / V
    return CouplingState(0.0, x, y, m, V, float(mirror_angle(m)),
                         _chart_point(curve, special, x, y), 0.0, 0.0, False)


def _step(curve, state, dW, cfg, special):
    """
    step_coupling plus the contact data of the step: (state', dL, n_X, dM, n_Y).
    """
    dW = np.asarray(dW, dtype=float)
    t = state.t + cfg.dt
    if state.coupled:
        x_new, dL, n_X = step_reflected(curve, state.X, dW, cfg.step_guard)
        ret = state._replace(t=t, X=x_new, Y=x_new, absL=state.absL + dL,
                             absM=state.absM + dL)
        return ret, dL, n_X, dL, n_X

    dZ = mirror_increments(state.m, dW)[0]
    # X first, then Y
    x_new, dL, n_X = step_reflected(curve, state.X, dW, cfg.step_guard)
    y_new, dM, n_Y = step_reflected(curve, state.Y, dZ, cfg.step_guard)

    d = y_new - x_new
    V = float(np.linalg.norm(d))
    absL, absM = state.absL + dL, state.absM + dM
    if V < cfg.eps_couple:
        logger.debug('Coupled at t=%.6g with V=%.3g', t, V)
        ret = state._replace(t=t, X=x_new, Y=x_new.copy(), V=0.0, absL=absL, absM=absM,
                             coupled=True)
        return ret, dL, n_X, dM, n_Y

    if dL == 0 and dM == 0:
        # interior: Y moved by the mirror image of X's increment
        m, theta, U = state.m, state.theta, state.U
    else:
        m = d / V
        theta = _continue_angle(state.theta, float(mirror_angle(m)))
        U = _chart_point(curve, special, x_new, y_new)
    ret = CouplingState(t, x_new, y_new, m, V, theta, U, absL, absM, False)
    return ret, dL, n_X, dM, n_Y


def step_coupling(curve, state, dW, cfg, special=None):
    """
    Advance the coupled pair by one step with the Brownian increment dW of X.
    """
    return _step(curve, state, dW, cfg, special)[0]


class _Diagnostics(object):
    """
    Per-step accumulators for the drift identity and the pathwise invariants.
    """

    def __init__(self, curve, V0):
        self.curve = curve
        self.V0 = V0
        self.Wbar = 0.0
        self.steps = 0
        self.contact_steps = 0
        self.drift_num = 0.0
        self.drift_den = 0.0
        self.drift_steps = 0
        self.theta_num = 0.0
        self.theta_den = 0.0
        self.interior_max_dm = 0.0
        self.interior_max_du = 0.0
        self.bisector_error = 0.0
        self.v_violations = 0
        self.v_excess = 0.0
        self.order_violations = 0
        self.undefined_steps = 0

    def predicted_du(self, special, before, after, dL, n_X, dM, n_Y):
        try:
            chord = phi_inv(special, *before.U)
            F = field_F(self.curve, chord, after.X, before.V, n_X) if dL else (0.0, 0.0)
            G = field_G(self.curve, chord, after.Y, before.V, n_Y) if dM else (0.0, 0.0)
        except (NotAdmissible, DegenerateChord):
            return None
        return np.asarray(F) * dL + np.asarray(G) * dM

    def update(self, special, before, after, dW, dL, n_X, dM, n_Y):
        self.steps += 1
        w_step = 2.0 * float(np.dot(before.m, dW))
        self.Wbar -= w_step
        if after.coupled:
            return
        # projection is 1-Lipschitz: V' <= |V - 2 m.dW|
        if after.V > abs(before.V - w_step) + 2.0 * _slack(self.curve):
            self.v_violations += 1
        self.v_excess = max(self.v_excess, after.V - self.V0 - self.Wbar)
        if not after.Y[0] - after.X[0] > 0:
            self.order_violations += 1
        mid = 0.5 * (after.X + after.Y)
        mirrored = reflect_points([after.X], [mid], [after.theta])[0]
        self.bisector_error = max(self.bisector_error, float(np.linalg.norm(mirrored - after.Y)))
        if after.U is None:
            self.undefined_steps += 1

        if not (dL or dM):
            drift = (after.Y - after.X) / after.V - before.m
            self.interior_max_dm = max(self.interior_max_dm, float(np.max(np.abs(drift))))
            if before.U is not None and after.U is not None:
                du = np.abs(np.subtract(after.U, before.U))
                self.interior_max_du = max(self.interior_max_du, float(np.max(du)))
            return

        self.contact_steps += 1
        p = np.array([-before.m[1], before.m[0]])
        push = np.zeros(2)
        if dM:
            push += n_Y * dM
        if dL:
            push -= n_X * dL
        predicted_theta = float(p.dot(push)) / before.V
        self.theta_num += abs((after.theta - before.theta) - predicted_theta)
        self.theta_den += abs(predicted_theta)

        if special is None or before.U is None or after.U is None:
            return
        predicted = self.predicted_du(special, before, after, dL, n_X, dM, n_Y)
        if predicted is None:
            return
        actual = np.subtract(after.U, before.U)
        self.drift_num += float(np.sum(np.abs(actual - predicted)))
        self.drift_den += float(np.sum(np.abs(predicted)))
        self.drift_steps += 1

    def to_dict(self):
        return {
            'steps': self.steps,
            'contact_steps': self.contact_steps,
            'boundary_fraction': self.contact_steps / float(self.steps) if self.steps else 0.0,
            'drift_steps': self.drift_steps,
            'drift_residual': self.drift_num / self.drift_den if self.drift_den else 0.0,
            'theta_residual': self.theta_num / self.theta_den if self.theta_den else 0.0,
            'interior_max_dm': self.interior_max_dm,
            'interior_max_du': self.interior_max_du,
            'bisector_error': self.bisector_error,
            'v_violations': self.v_violations,
            'v_excess': self.v_excess,
            'order_violations': self.order_violations,
            'undefined_steps': self.undefined_steps,
        }


def check_start(curve, special, lset, x, y):
    """
    Raise InvalidSimConfig unless both points are in the closed domain and the pair
    is in T.
    """
    pts = np.asarray([x, y], dtype=float)
    if not np.all(curve.oracle.contains(pts, tol=_slack(curve))):
        raise InvalidSimConfig('Start points must lie in the closed domain',
                               x=pts[0].tolist(), y=pts[1].tolist())
    if special is not None and lset is not None:
        if not pairs_in_T(curve, special, lset, pts[:1], pts[1:])[0]:
            raise InvalidSimConfig('Start pair is not in T', x=pts[0].tolist(),
                                   y=pts[1].tolist())


def simulate(curve, special, lset, x, y, cfg, check=True, stream=0):
    """
    Run one coupled path from (x, y) up to cfg.t_max.

    exit_time_from_L is the first time before coupling at which U is defined and
    outside the Lyapunov set.  Pass check=False for negative controls that start
    outside T.
    """
    if check:
        check_start(curve, special, lset, x, y)
    source = IncrementSource(cfg.seed, [stream], cfg.dt)
    state = initial_state(curve, special, x, y)
    diag = _Diagnostics(curve, state.V)
    rows = [state_row(state)]
    zeta = None
    exit_time = None

    n_steps = cfg.n_steps
    for k in range(1, n_steps + 1):
        dW = source.next()[0]
        before = state
        state, dL, n_X, dM, n_Y = _step(curve, before, dW, cfg, special)
        if not before.coupled:
            diag.update(special, before, state, dW, dL, n_X, dM, n_Y)
            if state.coupled:
                zeta = state.t
            elif (exit_time is None and lset is not None and state.U is not None and
                    not lset.contains(np.asarray(state.U))):
                exit_time = state.t
                logger.debug('U left the Lyapunov set at t=%.6g', exit_time)
        if k % cfg.record_stride == 0 or k == n_steps:
            rows.append(state_row(state))

    return PathRecord(cfg, rows, zeta=zeta, exit_time_from_L=exit_time,
                      diagnostics=diag.to_dict())
