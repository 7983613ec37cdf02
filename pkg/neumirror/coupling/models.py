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

from neumirror.coupling.exceptions import InvalidSimConfig

logger = logging.getLogger(__name__)

# columns of a recorded path
RECORD_COLUMNS = ('t', 'Xx', 'Xy', 'Yx', 'Yy', 'V', 'theta', 'u1', 'u2', 'absL', 'absM',
                  'coupled')


class SimConfig(object):
    """
    Discretization of one coupling run.

    eps_couple defaults to eps_factor * sqrt(dt); the two processes are merged once
    they come closer than that.
    """
    EPS_FACTOR = 3.0

    def __init__(self, dt, t_max, seed=0, record_stride=1, eps_couple=None,
                 eps_factor=EPS_FACTOR, step_guard=0.25):
        self.dt = float(dt)
        self.t_max = float(t_max)
        self.seed = int(seed)
        self.record_stride = int(record_stride)
        self.eps_factor = float(eps_factor)
        self.eps_couple = (self.eps_factor * math.sqrt(self.dt) if eps_couple is None
                           else float(eps_couple))
        self.step_guard = float(step_guard)
        self._validate()

    def _validate(self):
        errors = []
        if not self.dt > 0:
            errors.append('dt must be positive, got {0}'.format(self.dt))
        elif not self.dt < self.t_max:
            errors.append('dt={0} must be smaller than t_max={1}'.format(self.dt, self.t_max))
        if self.record_stride < 1:
            errors.append('record_stride must be at least 1')
        if not self.eps_couple > 0:
            errors.append('eps_couple must be positive')
        if not 0 < self.step_guard <= 1:
            errors.append('step_guard must lie in (0, 1]')
        if not 0 <= self.seed < 2 ** 64:
            errors.append('seed must be a 64-bit unsigned integer')
        if errors:
            raise InvalidSimConfig('; '.join(errors))

        if self.dt > 0 and self.eps_couple < 3.0 * math.sqrt(self.dt):
            logger.warning('eps_couple=%.3g is below 3 sqrt(dt)=%.3g; expect spurious couplings',
                           self.eps_couple, 3.0 * math.sqrt(self.dt))

    @classmethod
    def from_config(cls, section, seed=0, **overrides):
        """
        Build from the `simulation` section of a NeumirrorConfig.
        """
        values = {
            'dt': section['dt'],
            't_max': section['t_max'],
            'record_stride': section.get('record_stride', 1),
            'eps_factor': section.get('eps_factor', cls.EPS_FACTOR),
            'step_guard': section.get('step_guard', 0.25),
            'seed': seed,
        }
        values.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**values)

    @property
    def n_steps(self):
        return int(math.ceil(self.t_max / self.dt - 1e-9))

    def replace(self, **kwargs):
        values = self.to_dict()
        if 'dt' in kwargs and 'eps_couple' not in kwargs:
            # keep the radius tied to the new step
            values.pop('eps_couple')
        values.update(kwargs)
        return SimConfig(**values)

    def to_dict(self):
        return {
            'dt': self.dt,
            't_max': self.t_max,
            'seed': self.seed,
            'record_stride': self.record_stride,
            'eps_couple': self.eps_couple,
            'eps_factor': self.eps_factor,
            'step_guard': self.step_guard,
        }

    def __repr__(self):
        return 'SimConfig(dt={0:g}, t_max={1:g}, seed={2})'.format(self.dt, self.t_max,
                                                                 self.seed)


CouplingState = collections.namedtuple('CouplingState', [
    't', 'X', 'Y', 'm', 'V', 'theta', 'U', 'absL', 'absM', 'coupled',
])


def state_row(state):
    u1, u2 = (float('nan'), float('nan')) if state.U is None else state.U
    return [state.t, state.X[0], state.X[1], state.Y[0], state.Y[1], state.V, state.theta,
            u1, u2, state.absL, state.absM, int(state.coupled)]


class PathRecord(object):
    """
    Sampled states of one coupled path plus the per-step diagnostics gathered
    while it ran.
    """

    def __init__(self, cfg, rows, zeta=None, exit_time_from_L=None, diagnostics=None):
        self.cfg = cfg
        self.rows = np.asarray(rows, dtype=float).reshape(-1, len(RECORD_COLUMNS))
        self.zeta = zeta
        self.exit_time_from_L = exit_time_from_L
        self.diagnostics = diagnostics or {}

    def column(self, name):
        return self.rows[:, RECORD_COLUMNS.index(name)]

    @property
    def coupled(self):
        return self.zeta is not None

    @property
    def exited(self):
        return self.exit_time_from_L is not None

    def to_rows(self):
        """
        CSV-ready rows, header first.
        """
        ret = [list(RECORD_COLUMNS)]
        for row in self.rows:
            out = [float(v) for v in row]
            out[-1] = int(row[-1])
            ret.append(out)
        return ret

    def to_dict(self):
        return {
            'config': self.cfg.to_dict(),
            'samples': len(self.rows),
            'zeta': self.zeta,
            'exit_time_from_L': self.exit_time_from_L,
            'diagnostics': self.diagnostics,
        }


class InvarianceReport(object):
    """
    Exit statistics of a dt ladder.  Each entry of `ladder` is one dt with its own
    n_paths, n_exited and exit_fraction; the top-level numbers are for the finest dt.
    """

    def __init__(self, ladder, n_starts, monotone):
        self.ladder = sorted(ladder, key=lambda r: -r['dt'])
        self.n_starts = n_starts
        self.monotone = monotone

    @property
    def finest(self):
        return self.ladder[-1]

    @property
    def n_paths(self):
        return self.finest['n_paths']

    @property
    def n_exited(self):
        return self.finest['n_exited']

    @property
    def exit_fraction(self):
        return self.n_exited / float(self.n_paths) if self.n_paths else 0.0

    @property
    def mean_zeta(self):
        return self.finest['mean_zeta']

    def to_dict(self):
        return {
            'n_paths': self.n_paths,
            'n_exited': self.n_exited,
            'exit_fraction': self.exit_fraction,
            'mean_zeta': self.mean_zeta,
            'n_starts': self.n_starts,
            'monotone': self.monotone,
            'ladder': self.ladder,
        }
