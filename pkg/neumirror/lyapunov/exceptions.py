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

from neumirror.core.exceptions import AssumptionFailure, InputError, NumericalFailure

logger = logging.getLogger(__name__)


class NoTermination(NumericalFailure):
    default_detail = 'ODE arc did not reach a normal chord'


class OrderingViolated(AssumptionFailure):
    default_detail = 'ODE arc ended outside its boundary interval'


class NonPositiveRhs(AssumptionFailure):
    default_detail = 'ODE right hand side changed sign'


class ArcsIntersect(AssumptionFailure):
    default_detail = 'Lyapunov loop intersects itself'


class ConnectorImpossible(AssumptionFailure):
    default_detail = 'Connector arc endpoints are out of order'


class CoincidentPoints(InputError):
    default_detail = 'x and y coincide'
