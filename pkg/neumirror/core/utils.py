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
import collections.abc
import hashlib
import json
import logging
from functools import wraps

from neumirror.core.exceptions import NumericalFailure

logger = logging.getLogger(__name__)


def auto_retry(name=None, max_attempts=3, exception_type=NumericalFailure):
    """
    Decorator to automatically retry a function a given number of times
    :param name: the name of the retry function
    :param max_attempts: the maximum number of attempts to call the function
    :param exception_type: the type of exception to catch
    """
    def decorator(func):

        @wraps(func)
        def wrapper(*args, **kwargs):
            exc = None

            for attempt in range(1, max_attempts + 1):
                # The wrapped function uses this to vary its input between attempts
                kwargs['attempt'] = attempt
                try:
                    return func(*args, **kwargs)
                except exception_type as e:
                    exc = e
                    logger.warning('%s attempt %d/%d failed: %s',
                                   name or func.__name__, attempt, max_attempts, e.detail)

            msg = 'Max attempts for {0} exceeded'.format(name) if name else 'Max attempts exceeded'
            raise exception_type('{0}: {1}'.format(msg, exc.detail))

        return wrapper

    return decorator


def recursively_sort_dict(d):
    ret = collections.OrderedDict()
    for k, v in sorted(d.items(), key=lambda x: x[0]):
        if isinstance(v, dict):
            ret[k] = recursively_sort_dict(v)
        else:
            ret[k] = v
    return ret


def recursive_update(d, u):
    for k, v in u.items():
        if isinstance(v, collections.abc.Mapping):
            r = recursive_update(d.get(k, {}), v)
            d[k] = r
        else:
            d[k] = u[k]
    return d


def dumps_canonical(obj, indent=2):
    """
    Deterministic JSON: sorted keys, fixed separators, trailing newline.
    """
    if isinstance(obj, dict):
        obj = recursively_sort_dict(obj)
    return json.dumps(obj, indent=indent, sort_keys=True, separators=(',', ': ')) + '\n'


def stable_hash(obj):
    return hashlib.sha256(dumps_canonical(obj, indent=None).encode('utf-8')).hexdigest()
