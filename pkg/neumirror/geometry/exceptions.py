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

from neumirror.core.exceptions import InputError, NumericalFailure

logger = logging.getLogger(__name__)


class InvalidVector(InputError):
    default_detail = 'Vector components must be finite'


class DegeneratePiece(InputError):
    default_detail = 'Degenerate boundary piece'


class NotClosed(InputError):
    default_detail = 'Boundary is not closed'


class NotConvex(InputError):
    default_detail = 'Boundary is not convex and counterclockwise'


class JointPoint(InputError):
    """
    Raised when a one-valued query lands on a joint where the two sides disagree.
    `payload` carries the `left` and `right` one-sided values.
    """
    default_detail = 'Query at a non-smooth joint'


class FlatMatch(InputError):
    """
    The requested normal belongs to a straight piece; `payload['interval']` holds the
    arclength endpoints of the whole solution set.
    """
    default_detail = 'Normal angle matches a straight segment'


class NoIntersection(InputError):
    default_detail = 'Line does not meet the domain'


class TangentLine(InputError):
    default_detail = 'Line only touches the boundary'


class RhoTooLarge(InputError):
    default_detail = 'Fillet radius too large'


class ProjectionFailure(NumericalFailure):
    default_detail = 'Boundary projection did not converge'
