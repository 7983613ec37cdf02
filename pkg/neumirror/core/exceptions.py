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

from neumirror.core.constants import ExitCode

logger = logging.getLogger(__name__)


class NeumirrorError(Exception):
    """
    Base class for every error the library reports on purpose.

    `exit_code` is what the command line exits with when the error escapes a command.
    """
    exit_code = ExitCode.NUMERICAL_FAILURE
    default_detail = 'Internal numerical failure'

    def __init__(self, detail=None, **payload):
        self.detail = detail if detail is not None else self.default_detail
        self.payload = payload
        super(NeumirrorError, self).__init__(self.detail)

    def __str__(self):
        return '{0}: {1}'.format(self.default_detail, self.detail)

    def to_dict(self):
        ret = {
            'error': self.__class__.__name__,
            'detail': str(self.detail),
            'exit_code': self.exit_code,
        }
        if self.payload:
            ret['payload'] = self.payload
        return ret


class InputError(NeumirrorError):
    exit_code = ExitCode.INPUT_ERROR
    default_detail = 'Invalid input'


class AssumptionFailure(NeumirrorError):
    exit_code = ExitCode.ASSUMPTION_FAILURE
    default_detail = 'Assumption violated'


class UnresolvedVerdict(NeumirrorError):
    exit_code = ExitCode.UNRESOLVED
    default_detail = 'Unresolved verdict'


class NumericalFailure(NeumirrorError):
    exit_code = ExitCode.NUMERICAL_FAILURE
    default_detail = 'Numerical failure'
