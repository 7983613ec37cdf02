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

from neumirror.core.exceptions import InputError, UnresolvedVerdict

logger = logging.getLogger(__name__)


class InvalidSimConfig(InputError):
    default_detail = 'Invalid simulation configuration'


class StepTooLarge(InputError):
    """
    A Brownian increment exceeded the step guard; use a smaller dt.
    """
    default_detail = 'Brownian increment too large for the domain'


class InsufficientSurvivors(UnresolvedVerdict):
    default_detail = 'Too few uncoupled paths'
