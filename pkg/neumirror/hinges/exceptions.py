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


class OnMirror(InputError):
    default_detail = 'Boundary point lies on the mirror'


class NotAdmissible(InputError):
    default_detail = 'Chord is not admissible'


class FamilyViolation(InputError):
    default_detail = 'Chord is outside the requested family'


class DegenerateChord(NumericalFailure):
    default_detail = 'Chord is parallel to the boundary at an endpoint'


class ExtremalPointError(AssumptionFailure):
    """
    The extremal hinge points of a chord do not exist as required.
    """
    default_detail = 'Extremal points undefined'


class NoIntersection(ExtremalPointError):
    default_detail = 'Right boundary misses the reflected left boundary'


class MultipleIntersections(ExtremalPointError):
    default_detail = 'Right boundary meets the reflected left boundary more than once'


class TangentialIntersection(ExtremalPointError):
    default_detail = 'Right boundary touches the reflected left boundary tangentially'


class HingeRayViolation(ExtremalPointError):
    default_detail = 'Extremal tangent misses the required ray of the mirror'


class SpecialPointsError(AssumptionFailure):
    default_detail = 'Special points undefined'


class OrientationViolated(SpecialPointsError):
    default_detail = 'Special points are out of order'


class EmptyHingeFreeArc(SpecialPointsError):
    default_detail = 'No hinge-free arc of angle-alpha chords'
