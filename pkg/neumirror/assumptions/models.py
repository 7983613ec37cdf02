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

from neumirror.core.constants import ExitCode, Verdict

logger = logging.getLogger(__name__)


class AssumptionResult(object):
    """
    Verdict of one sampled assumption check.  A failure always carries a witness
    that reproduces it.
    """

    def __init__(self, name, verdict, witness=None, reason=None, checked=0, **details):
        if verdict not in Verdict.priority:
            raise ValueError('Invalid verdict `{0}`'.format(verdict))
        if verdict == Verdict.FAIL and witness is None:
            raise ValueError('A failed check needs a witness')
        self.name = name
        self.verdict = verdict
        self.witness = witness
        self.reason = reason
        self.checked = checked
        self.details = details

    @classmethod
    def passed(cls, name, checked, **details):
        return cls(name, Verdict.PASS, checked=checked, **details)

    @classmethod
    def failed(cls, name, witness, reason, checked=0, **details):
        return cls(name, Verdict.FAIL, witness=witness, reason=reason, checked=checked,
                   **details)

    @classmethod
    def skipped(cls, name, reason):
        return cls(name, Verdict.SKIPPED, reason=reason)

    def to_dict(self):
        ret = {
            'verdict': self.verdict,
            'checked': self.checked,
        }
        if self.witness is not None:
            ret['witness'] = self.witness
        if self.reason:
            ret['reason'] = self.reason
        ret.update(self.details)
        return ret

    def __repr__(self):
        return 'AssumptionResult({0}={1})'.format(self.name, self.verdict)


class AssumptionReport(object):

    def __init__(self, alpha, results, resolutions, nu_found=None, domain_hash=None):
        self.alpha = alpha
        self.results = collections.OrderedDict((r.name, r) for r in results)
        self.resolutions = dict(resolutions)
        self.nu_found = nu_found
        self.domain_hash = domain_hash

    def __getitem__(self, name):
        return self.results[name]

    @property
    def verdict(self):
        return Verdict.aggregate([r.verdict for r in self.results.values()])

    @property
    def exit_code(self):
        return ExitCode.from_verdict(self.verdict)

    def to_dict(self):
        return {
            'alpha': self.alpha,
            'domain_hash': self.domain_hash,
            'verdict': self.verdict,
            'nu_found': self.nu_found,
            'resolutions': self.resolutions,
            'assumptions': {name: r.to_dict() for name, r in self.results.items()},
        }
