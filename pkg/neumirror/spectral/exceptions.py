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

from neumirror.core.exceptions import InputError, NumericalFailure, UnresolvedVerdict

logger = logging.getLogger(__name__)


class MeshTooCoarse(InputError):
    default_detail = 'Mesh size must be below a tenth of the diameter'


class MeshQualityFailure(NumericalFailure):
    default_detail = 'Mesh quality below the requested minimum angle'


class DegenerateTriangle(NumericalFailure):
    default_detail = 'Mesh has a degenerate or inverted triangle'


class NoConvergence(NumericalFailure):
    default_detail = 'Eigensolver did not converge'


class MultiplicityUnresolved(UnresolvedVerdict):
    default_detail = 'Second eigenvalue multiplicity is unresolved'
