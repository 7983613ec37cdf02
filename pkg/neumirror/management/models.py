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

import datetime
import logging

from neumirror.core.utils import stable_hash
from neumirror.version import __version__

logger = logging.getLogger(__name__)


def _now():
    return datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0).isoformat()


class RunManifest(object):
    """
    Provenance of one command run.  The id covers the inputs only (command,
    arguments, config, version, seed and domain), so reruns of the same inputs write
    artifacts that carry the same id.
    """

    def __init__(self, command, arguments, config, seed, domain_hash=None):
        self.command = command
        self.arguments = dict(arguments)
        self.config = dict(config)
        self.seed = int(seed)
        self.domain_hash = domain_hash
        self.version = __version__
        self.started = _now()
        self.finished = None
        self.outputs = []

    @property
    def id(self):
        return stable_hash({
            'command': self.command,
            'arguments': self.arguments,
            'config': self.config,
            'version': self.version,
            'seed': self.seed,
            'domain_hash': self.domain_hash,
        })[:16]

    def add_output(self, path, kind):
        self.outputs.append({'path': path, 'kind': kind})

    def finish(self):
        self.finished = _now()

    def to_dict(self):
        return {
            'id': self.id,
            'command': self.command,
            'arguments': self.arguments,
            'config': self.config,
            'version': self.version,
            'seed': self.seed,
            'domain_hash': self.domain_hash,
            'started': self.started,
            'finished': self.finished,
            'outputs': self.outputs,
        }

    def __repr__(self):
        return 'RunManifest({0}, id={1})'.format(self.command, self.id)
