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

from neumirror.core.exceptions import InputError

logger = logging.getLogger(__name__)


class Options(object):
    """
    Named knobs with defaults.  Unknown names are rejected up front so a typo in a
    config file fails loudly instead of silently using the default.
    """
    DEFAULTS = {}

    def __init__(self, opts=None, **kwargs):
        user_opts = dict(opts or {})
        user_opts.update(kwargs)

        unknown = sorted(k for k in user_opts if k not in self.DEFAULTS)
        if unknown:
            raise InputError('Unknown {0} option(s): {1}'.format(
                self.__class__.__name__, ', '.join(unknown)))

        self.__dict__['user_opts'] = user_opts

    def __getattr__(self, item):
        if item in self.user_opts:
            return self.user_opts[item]
        elif item in self.DEFAULTS:
            return self.DEFAULTS[item]
        else:
            raise AttributeError(item)

    def __setattr__(self, key, value):
        raise AttributeError('{0} is read-only'.format(self.__class__.__name__))

    def to_dict(self):
        ret = dict(self.DEFAULTS)
        ret.update(self.user_opts)
        return ret

    def replace(self, **kwargs):
        opts = dict(self.user_opts)
        opts.update(kwargs)
        return self.__class__(opts)


class Tolerances(Options):
    DEFAULTS = {
        # relative to the domain diameter
        'close': 1e-9,
        'root': 1e-10,
        'boundary': 1e-9,

        # absolute
        'convex': 1e-12,
        'parallel': 1e-9,
        'angle': 1e-6,
        'normal': 1e-6,
        'family': 1e-9,
        'degenerate': 1e-9,

        # strict-inequality buffer (radians) for sampled families
        'buffer': 1e-6,
    }


class Sampling(Options):
    DEFAULTS = {
        'oracle_points': 8192,
        'hinge_scan': 2000,
        'hinge_free_scan': 200,
        'endpoint_cluster': 40,
        'assumption_grid': 50,
        'assumption_boundary': 200,
        'extremal_grid': 10,
        'a5_grid': 20,
        'arc_alpha': 200,
    }
