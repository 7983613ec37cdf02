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

import math


class Verdict(object):
    """
    Define valid values for an assumption / stage verdict
    """
    PASS = 'pass'
    FAIL = 'fail'
    SKIPPED = 'skipped'

    priority = {
        FAIL: 2,
        SKIPPED: 1,
        PASS: 0,
    }

    @classmethod
    def aggregate(cls, verdict_list):
        invalid_verdicts = [v for v in verdict_list if v not in cls.priority]

        if invalid_verdicts:
            raise ValueError('An invalid verdict was passed in.')

        if not verdict_list:
            # Nothing was checked, so nothing passed either
            return cls.SKIPPED

        return sorted(verdict_list, key=lambda x: cls.priority[x], reverse=True)[0]


class Multiplicity(object):
    """
    Define valid multiplicity verdicts for the second Neumann eigenvalue
    """
    SIMPLE = 'simple'
    DOUBLE = 'double'
    UNRESOLVED = 'unresolved'

    ALL = (SIMPLE, DOUBLE, UNRESOLVED)


class Side(object):
    LEFT = 'left'
    RIGHT = 'right'


class Level(object):
    UPPER = 'upper'
    LOWER = 'lower'


class Inside(object):
    INSIDE = 'inside'
    BOUNDARY = 'boundary'
    OUTSIDE = 'outside'


class PieceKind(object):
    CIRCLE_ARC = 'circle_arc'
    ELLIPSE_ARC = 'ellipse_arc'
    SEGMENT = 'segment'

    ALL = (CIRCLE_ARC, ELLIPSE_ARC, SEGMENT)


class Family(object):
    """
    The four chord families whose mirrors pivot on extremal hinge points.

    Lower families carry their active points near P, upper ones near Q.
    """
    P1_P3 = 'A(P1,P3)'
    Q4_Q6 = 'A(Q4,Q6)'
    P1_P3_PRIMED = "A(P1',P3')"
    Q4_Q6_PRIMED = "A(Q4',Q6')"

    ALL = (P1_P3, Q4_Q6, P1_P3_PRIMED, Q4_Q6_PRIMED)

    LOWER = (P1_P3, P1_P3_PRIMED)
    PRIMED = (P1_P3_PRIMED, Q4_Q6_PRIMED)

    @classmethod
    def unprimed(cls, family):
        return {
            cls.P1_P3_PRIMED: cls.P1_P3,
            cls.Q4_Q6_PRIMED: cls.Q4_Q6,
        }.get(family, family)


class ExitCode(object):
    OK = 0
    INPUT_ERROR = 1
    ASSUMPTION_FAILURE = 2
    UNRESOLVED = 3
    NUMERICAL_FAILURE = 4

    @classmethod
    def from_verdict(cls, verdict):
        return {
            Verdict.PASS: cls.OK,
            Verdict.FAIL: cls.ASSUMPTION_FAILURE,
            Verdict.SKIPPED: cls.UNRESOLVED,
        }[verdict]


TWO_PI = 2.0 * math.pi
